mod common;

use common::{polyfn, ratfunc};
use dirac_groupoids::geometry::{
    exterior_derivative, lie_derivative, pullback_form, Chart, KForm, SmoothMap, VectorField, RF,
};
use proptest::prelude::*;

fn chart(name: &str, coords: &[&str]) -> Chart {
    Chart::new(name, coords.iter().copied()).unwrap()
}

fn m3() -> Chart {
    chart("M", &["x", "y", "z"])
}

fn n2() -> Chart {
    chart("N", &["u", "v"])
}

fn polys(c: &Chart, k: usize) -> impl Strategy<Value = Vec<RF>> {
    prop::collection::vec(polyfn(c.vars().clone(), 3, 3), k)
}

fn rfs(c: &Chart, k: usize) -> impl Strategy<Value = Vec<RF>> {
    prop::collection::vec(ratfunc(c.vars().clone()), k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chain_rule(outer in polys(&n2(), 2), inner in polys(&m3(), 2)) {
        // inner: M -> N, outer: N -> N
        let (m, n) = (m3(), n2());
        let inner = SmoothMap::new(&m, &n, inner).unwrap();
        let outer = SmoothMap::new(&n, &n, outer).unwrap();
        let lhs = outer.compose(&inner).unwrap().jacobian();
        let rhs = inner.pull_matrix(&outer.jacobian()).unwrap().mul(&inner.jacobian());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squared_vanishes(f in ratfunc(m3().vars().clone()), alpha in rfs(&m3(), 3)) {
        let c = m3();
        let ddf = exterior_derivative(&exterior_derivative(&KForm::function(f, &c)).unwrap()).unwrap();
        prop_assert!(ddf.is_zero());
        let dda = exterior_derivative(&exterior_derivative(&KForm::one_form(&c, alpha).unwrap()).unwrap()).unwrap();
        prop_assert!(dda.is_zero());
    }

    #[test]
    fn cartan_formula_matches_coordinate_expansion(x in rfs(&m3(), 3), alpha in rfs(&m3(), 3)) {
        let c = m3();
        let field = VectorField::new(&c, x.clone()).unwrap();
        let form = KForm::one_form(&c, alpha.clone()).unwrap();
        let cartan = lie_derivative(&field, &form).unwrap();
        for j in 0..3 {
            let mut expected = c.zero();
            for i in 0..3 {
                expected = &expected + &(&x[i] * &alpha[j].derivative(i));
                expected = &expected + &(&alpha[i] * &x[i].derivative(j));
            }
            prop_assert_eq!(&cartan.components()[j], &expected);
        }
    }

    #[test]
    fn pullback_commutes_with_d(map in polys(&m3(), 2), f in polyfn(n2().vars().clone(), 3, 3), beta in polys(&n2(), 2)) {
        let (m, n) = (m3(), n2());
        let phi = SmoothMap::new(&m, &n, map).unwrap();
        for form in [KForm::function(f, &n), KForm::one_form(&n, beta).unwrap()] {
            let lhs = pullback_form(&phi, &exterior_derivative(&form).unwrap()).unwrap();
            let rhs = exterior_derivative(&pullback_form(&phi, &form).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
