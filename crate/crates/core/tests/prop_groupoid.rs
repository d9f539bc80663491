mod common;

use common::{point, polyfn};
use dirac_groupoids::dirac::{from_bivector, Bivector};
use dirac_groupoids::document::load;
use dirac_groupoids::expr::Q;
use dirac_groupoids::geometry::{eval_matrix, Chart, PointP};
use dirac_groupoids::groupoid::{
    affine_group, check_dirac_multiplicative, check_groupoid_axioms, pair_dirac, pair_groupoid, vector_group,
    GroupoidDef,
};
use dirac_groupoids::linalg::{solve, Matrix};
use proptest::prelude::*;

fn action_groupoid() -> GroupoidDef {
    load(include_str!("../corpus/action-groupoid.json")).unwrap().def
}

fn at(chart: &Chart, coords: Vec<Q>) -> PointP {
    PointP::new(chart, coords).unwrap()
}

/// A covector at `h` whose target matches `want`, shifted along the kernel by `shift`.
fn composable_covector(def: &GroupoidDef, h: &PointP, want: &[Q], shift: &[Q]) -> Vec<Q> {
    let right: Matrix<Q> = eval_matrix(&def.calc.right, &h.coords).unwrap();
    let sol = solve(&right.transpose(), want).expect("t̂ is onto the covectors vanishing on the units");
    let mut out = sol.particular;
    for (k, c) in sol.kernel.iter().zip(shift) {
        for (o, v) in out.iter_mut().zip(k) {
            *o += v * c;
        }
    }
    out
}

/// Composable triples `(g, h, k)` in the pair and action groupoids, from a base point and three displacements.
fn chain(def: &GroupoidDef, pair: bool, seed: &[Q]) -> (PointP, PointP, PointP) {
    let t = &def.total;
    if pair {
        let (a, b, c, d) = (seed[0].clone(), seed[1].clone(), seed[2].clone(), seed[3].clone());
        (at(t, vec![a, b.clone()]), at(t, vec![b, c.clone()]), at(t, vec![c, d]))
    } else {
        let (x, u1, u2, u3) = (seed[0].clone(), seed[1].clone(), seed[2].clone(), seed[3].clone());
        let k = at(t, vec![x.clone(), u1.clone()]);
        let h = at(t, vec![&x + &u1, u2.clone()]);
        let g = at(t, vec![&(&x + &u1) + &u2, u3]);
        (g, h, k)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn builtin_groupoids_satisfy_the_axioms(seed in 0u64..10_000) {
        let r2 = Chart::new("M", ["x", "y"]).unwrap();
        for def in [pair_groupoid(&r2).unwrap(), affine_group().unwrap(), vector_group(&["x", "y"]).unwrap(), action_groupoid()] {
            let r = check_groupoid_axioms(&def, 4, seed).unwrap();
            prop_assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn units_are_idempotent_for_the_tangent_product(p in point(2), u in point(2)) {
        let r2 = Chart::new("M", ["x", "y"]).unwrap();
        let def = pair_groupoid(&r2).unwrap();
        let base = at(&def.base, p);
        let e = def.unit_at(&base).unwrap();
        let teu = def.unit.jacobian_at(&base).unwrap().apply(&u);
        prop_assert_eq!(def.tangent_mult_at(&e, &e, &teu, &teu).unwrap(), teu);
    }

    #[test]
    fn cotangent_product_is_associative(pair in any::<bool>(), seed in point(4), ag in point(2), s1 in point(2), s2 in point(2)) {
        let def = if pair { pair_groupoid(&Chart::new("M", ["x"]).unwrap()).unwrap() } else { action_groupoid() };
        let (g, h, k) = chain(&def, pair, &seed);
        let ah = composable_covector(&def, &h, &def.hat_s_at(&g, &ag).unwrap(), &s1);
        let ak = composable_covector(&def, &k, &def.hat_s_at(&h, &ah).unwrap(), &s2);
        let gh = def.product_at(&g, &h).unwrap();
        let hk = def.product_at(&h, &k).unwrap();
        let left = def.cotangent_mult_at(&gh, &k, &def.cotangent_mult_at(&g, &h, &ag, &ah).unwrap(), &ak).unwrap();
        let right = def.cotangent_mult_at(&g, &hk, &ag, &def.cotangent_mult_at(&h, &k, &ah, &ak).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn linear_poisson_structures_are_multiplicative(a in -4i64..=4, b in -4i64..=4, seed in 0u64..10_000) {
        let def = vector_group(&["x", "y"]).unwrap();
        let f = def.total.parse(&format!("{a}*x + {b}*y")).unwrap();
        let pi = Bivector::from_entries(&def.total, vec![((0, 1), f)]).unwrap();
        let r = check_dirac_multiplicative(&def, &from_bivector(&pi), 5, seed).unwrap();
        prop_assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn quadratic_poisson_structures_are_not(a in 1i64..=4, seed in 0u64..10_000) {
        let def = vector_group(&["x", "y"]).unwrap();
        let f = def.total.parse(&format!("{a}*x^2 + y")).unwrap();
        let pi = Bivector::from_entries(&def.total, vec![((0, 1), f)]).unwrap();
        let r = check_dirac_multiplicative(&def, &from_bivector(&pi), 5, seed).unwrap();
        prop_assert!(!r.passed());
        prop_assert!(r.failures().all(|c| !c.witnesses.is_empty()));
    }

    #[test]
    fn pair_of_any_planar_bivector_is_multiplicative(f in polyfn(dirac_groupoids::expr::Vars::new(["x", "y"]), 3, 3), seed in 0u64..10_000) {
        let m = Chart::new("M", ["x", "y"]).unwrap();
        let pi = Bivector::from_entries(&m, vec![((0, 1), f)]).unwrap();
        let (def, frame) = pair_dirac(&from_bivector(&pi)).unwrap();
        let r = check_dirac_multiplicative(&def, &frame, 4, seed).unwrap();
        prop_assert!(r.passed(), "{}", r.to_text());
    }
}
