mod common;

use common::{point, poly, ratfunc};
use dirac_groupoids::expr::{parse_expression, RationalFunction, Vars};
use proptest::prelude::*;

fn xyz() -> Vars {
    Vars::new(["x", "y", "z"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normalizing_twice_is_normalizing_once(f in ratfunc(xyz())) {
        let again = RationalFunction::new(f.num().clone(), f.den().clone()).unwrap();
        prop_assert_eq!(&again, &f);
        let reparsed = parse_expression(&f.to_string(), &xyz()).unwrap();
        prop_assert_eq!(reparsed, f);
    }

    #[test]
    fn scaled_presentation_reduces_to_the_same_form(p in poly(xyz(), 3, 3), g in poly(xyz(), 2, 2)) {
        let one = dirac_groupoids::expr::Polynomial::one(&xyz());
        let common = &(&g * &g) + &one;
        let f = RationalFunction::new(p.clone(), one.clone()).unwrap();
        let g2 = RationalFunction::new(&p * &common, common.clone()).unwrap();
        prop_assert_eq!(f, g2);
    }

    #[test]
    fn ring_axioms(a in ratfunc(xyz()), b in ratfunc(xyz()), c in ratfunc(xyz())) {
        prop_assert!((&(&(&a * &b) * &c) - &(&a * &(&b * &c))).is_identically_zero());
        prop_assert!((&(&(&a + &b) + &c) - &(&a + &(&b + &c))).is_identically_zero());
        prop_assert!((&(&a * &(&b + &c)) - &(&(&a * &b) + &(&a * &c))).is_identically_zero());
        prop_assert!((&(&a * &b) - &(&b * &a)).is_identically_zero());
    }

    #[test]
    fn product_rule(f in ratfunc(xyz()), g in ratfunc(xyz()), i in 0usize..3) {
        let lhs = (&f * &g).derivative(i);
        let rhs = &(&f * &g.derivative(i)) + &(&f.derivative(i) * &g);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        f in ratfunc(xyz()),
        s0 in ratfunc(Vars::new(["u", "v"])),
        s1 in ratfunc(Vars::new(["u", "v"])),
        s2 in ratfunc(Vars::new(["u", "v"])),
        p in point(2),
    ) {
        let uv = Vars::new(["u", "v"]);
        let sigma = [s0, s1, s2];
        let Ok(composed) = f.substitute(&sigma, &uv) else { return Ok(()) };
        let image: Vec<_> = sigma.iter().map(|s| s.evaluate_at(&p).unwrap()).collect();
        if let (Ok(lhs), Ok(rhs)) = (composed.evaluate_at(&p), f.evaluate_at(&image)) {
            prop_assert_eq!(lhs, rhs);
        }
    }
}
