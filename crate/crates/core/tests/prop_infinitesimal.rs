mod common;

use common::polyfn;
use dirac_groupoids::dirac::{from_bivector, from_two_form, Bivector, DiracFrame, PVec};
use dirac_groupoids::expr::Vars;
use dirac_groupoids::geometry::{lie_bracket, Chart, KForm, VectorField, RF};
use dirac_groupoids::groupoid::{pair_dirac, vector_group, GroupoidDef};
use dirac_groupoids::infinitesimal::{span_contains, Infinitesimal};
use proptest::prelude::*;

fn plane() -> Chart {
    Chart::new("M", ["x", "y"]).unwrap()
}

fn fun() -> impl Strategy<Value = RF> {
    polyfn(Vars::new(["x", "y"]), 2, 3)
}

/// Pair groupoid of the plane with either graph(f ∂x∧∂y) or graph(f dx∧dy); both are closed.
fn family(f: RF, poisson: bool) -> Infinitesimal {
    let m = plane();
    let base: DiracFrame = if poisson {
        from_bivector(&Bivector::from_entries(&m, vec![((0, 1), f)]).unwrap())
    } else {
        from_two_form(&KForm::from_entries(&m, 2, vec![(vec![0, 1], f)]).unwrap()).unwrap()
    };
    let (def, frame): (GroupoidDef, DiracFrame) = pair_dirac(&base).unwrap();
    Infinitesimal::new(&def, &frame).unwrap()
}

fn combo(inf: &Infinitesimal, coeffs: &[RF]) -> PVec<RF> {
    let z = inf.def.base.zero();
    let mut acc = PVec::zero(inf.def.n(), &z);
    for (f, a) in coeffs.iter().zip(&inf.units) {
        acc = acc.add(&a.scale(f));
    }
    acc
}

fn anchor(inf: &Infinitesimal, x: &PVec<RF>) -> VectorField {
    VectorField::new(&inf.def.base, inf.units_anchor(x)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn units_and_cores_split_the_restriction(f in fun(), poisson in any::<bool>()) {
        let inf = family(f, poisson);
        let n = inf.def.n();
        prop_assert_eq!(inf.units.len() + inf.t_core.len(), n);
        prop_assert_eq!(inf.units.len() + inf.s_core.len(), n);
        let r = inf.report().unwrap();
        prop_assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn star_bracket_ignores_the_representative(f in fun(), poisson in any::<bool>(), core in 0usize..4) {
        let inf = family(f, poisson);
        let z = inf.def.base.zero();
        for i in 0..inf.units.len() {
            for j in 0..inf.units.len() {
                let (x, y) = (&inf.units[i], &inf.units[j]);
                let plain = inf.star_bracket(x, y).unwrap();
                let core = core % inf.s_core.len().max(1);
                let moved = inf
                    .restricted_bracket(&inf.perturbed_star(x, core).unwrap(), &inf.perturbed_star(y, core).unwrap())
                    .unwrap();
                prop_assert!(inf.in_units(&plain));
                prop_assert!(span_contains(&inf.s_core, &moved.sub(&plain), &z), "[{i}, {j}] moved by {}", moved.sub(&plain));
            }
        }
    }

    #[test]
    fn anchor_is_a_morphism_and_leibniz_holds(f in fun(), a in prop::collection::vec(fun(), 4), b in prop::collection::vec(fun(), 4), g in fun()) {
        let inf = family(f, true);
        let (x, y) = (combo(&inf, &a), combo(&inf, &b));
        let xy = inf.star_bracket(&x, &y).unwrap();
        let lhs = anchor(&inf, &xy);
        let rhs = lie_bracket(&anchor(&inf, &x), &anchor(&inf, &y)).unwrap();
        prop_assert_eq!(lhs, rhs);
        let scaled = inf.star_bracket(&x, &y.scale(&g)).unwrap();
        let expected = xy.scale(&g).add(&y.scale(&anchor(&inf, &x).apply(&g)));
        prop_assert_eq!(scaled, expected);
    }

    #[test]
    fn jacobi_on_unit_generators(f in fun(), poisson in any::<bool>()) {
        let inf = family(f, poisson);
        let u = &inf.units;
        let br = |a: &PVec<RF>, b: &PVec<RF>| inf.star_bracket(a, b).unwrap();
        for i in 0..u.len() {
            for j in (i + 1)..u.len() {
                for k in (j + 1)..u.len() {
                    let jac = br(&br(&u[i], &u[j]), &u[k])
                        .add(&br(&br(&u[j], &u[k]), &u[i]))
                        .add(&br(&br(&u[k], &u[i]), &u[j]));
                    prop_assert!(jac.is_zero(), "({i}, {j}, {k}): {jac}");
                }
            }
        }
    }

    #[test]
    fn linear_poisson_group_units_are_the_dual(a in -3i64..=3, b in -3i64..=3) {
        let def = vector_group(&["x", "y"]).unwrap();
        let f = def.total.parse(&format!("{a}*x + {b}*y")).unwrap();
        let pi = Bivector::from_entries(&def.total, vec![((0, 1), f)]).unwrap();
        let inf = Infinitesimal::new(&def, &from_bivector(&pi)).unwrap();
        // π vanishes at the unit, so 𝔄 = 0 ⊕ 𝔤*
        prop_assert_eq!(inf.units.len(), 2);
        prop_assert!(inf.units.iter().all(|u| u.vector.iter().all(RF::is_zero)));
    }
}
