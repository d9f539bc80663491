mod common;

use common::polyfn;
use dirac_groupoids::bcourant::build_b;
use dirac_groupoids::dirac::{from_bivector, from_two_form, Bivector, PVec};
use dirac_groupoids::expr::Vars;
use dirac_groupoids::geometry::{Chart, KForm, RF};
use dirac_groupoids::groupoid::{affine_group, pair_dirac};
use dirac_groupoids::homogeneous::{build_homogeneous, drinfeld_classify, SubgroupoidData, UnitDirac};
use dirac_groupoids::report::Status;
use proptest::prelude::*;

fn col(c: &Chart, v: [i64; 2], a: [i64; 2]) -> PVec<RF> {
    let f = |x: i64| c.parse(&x.to_string()).unwrap();
    PVec::new(v.iter().map(|&x| f(x)).collect(), a.iter().map(|&x| f(x)).collect())
}

/// Lagrangian subspaces of `𝔤 ⊕ 𝔤*` for a 2-dimensional `𝔤`.
#[derive(Clone, Debug)]
enum Lagrangian {
    TwoForm(i64),
    Bivector(i64),
    Annihilator([i64; 2]),
}

fn lagrangian() -> impl Strategy<Value = Lagrangian> {
    prop_oneof![
        (-4i64..=4).prop_map(Lagrangian::TwoForm),
        (-4i64..=4).prop_map(Lagrangian::Bivector),
        prop::array::uniform2(-3i64..=3)
            .prop_filter("nonzero", |v| *v != [0, 0])
            .prop_map(Lagrangian::Annihilator),
    ]
}

fn generators(c: &Chart, l: &Lagrangian) -> Vec<PVec<RF>> {
    match *l {
        Lagrangian::TwoForm(k) => vec![col(c, [1, 0], [0, k]), col(c, [0, 1], [-k, 0])],
        Lagrangian::Bivector(k) => vec![col(c, [0, k], [1, 0]), col(c, [-k, 0], [0, 1])],
        Lagrangian::Annihilator([p, q]) => vec![col(c, [p, q], [0, 0]), col(c, [0, 0], [-q, p])],
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn groupoid_datum_rebuilds_the_groupoid(f in polyfn(Vars::new(["x", "y"]), 2, 3), poisson in any::<bool>(), seed in 0u64..10_000) {
        let m = Chart::new("M", ["x", "y"]).unwrap();
        let base = if poisson {
            from_bivector(&Bivector::from_entries(&m, vec![((0, 1), f)]).unwrap())
        } else {
            from_two_form(&KForm::from_entries(&m, 2, vec![(vec![0, 1], f)]).unwrap()).unwrap()
        };
        let (def, frame) = pair_dirac(&base).unwrap();
        let b = build_b(&def, &frame).unwrap();
        let d = UnitDirac::of_groupoid(&b).unwrap();
        let built = build_homogeneous(&b, &d).unwrap();
        let cols = built.columns();
        for x in frame.columns() {
            let zero = cols.iter().all(|y| y.pairing(&x).is_zero());
            prop_assert!(zero, "D_G section {} not in the rebuilt structure", x);
        }
        let r = drinfeld_classify(&b, &SubgroupoidData::units_only(&def), &d, 2, seed).unwrap();
        prop_assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn left_invariant_structures_on_the_affine_group(l in lagrangian(), seed in 0u64..10_000) {
        let def = affine_group().unwrap();
        let b = build_b(&def, &from_bivector(&Bivector::zero(&def.total))).unwrap();
        let d = UnitDirac::new(&def, generators(&def.base, &l)).unwrap();
        let r = drinfeld_classify(&b, &SubgroupoidData::units_only(&def), &d, 2, seed).unwrap();
        let sandwich_ok = r.checks.iter().filter(|c| c.name.starts_with("sandwich/")).all(|c| c.status == Status::Pass);
        if sandwich_ok {
            for name in ["K_H = AH^l × 0 ⊆ D", "uniqueness: rebuilding from D|P reproduces D", "closedness verdicts agree"] {
                let c = r.check(name);
                prop_assert!(c.is_some_and(|c| c.status == Status::Pass), "{name}\n{}", r.to_text());
            }
        } else {
            let last = r.notes.last().unwrap();
            prop_assert!(last.contains("sandwich"), "{}", r.to_text());
        }
    }
}
