#![allow(dead_code)]

use dirac_groupoids::expr::{Polynomial, RationalFunction, Vars, Q};
use num_rational::BigRational;
use proptest::prelude::*;

pub fn rat(n: i64, d: i64) -> Q {
    BigRational::new(n.into(), d.into())
}

/// Polynomial with at most `terms` terms, each exponent below `max_exp`, coefficients in [-4, 4].
pub fn poly(vars: Vars, terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0..max_exp, n), -4i64..=4), 0..=terms)
        .prop_map(move |ts| Polynomial::from_terms(&vars, ts.into_iter().map(|(e, c)| (e, rat(c, 1)))))
}

/// Quotient of two small polynomials; the denominator has constant term 1 so it is never zero.
pub fn ratfunc(vars: Vars) -> impl Strategy<Value = RationalFunction> {
    let one = Polynomial::one(&vars);
    (poly(vars.clone(), 3, 3), poly(vars, 2, 2)).prop_map(move |(num, den)| {
        let shifted = &(&den * &den) + &one;
        RationalFunction::new(num, shifted).expect("denominator is a square plus one")
    })
}

pub fn polyfn(vars: Vars, terms: usize, max_exp: u32) -> impl Strategy<Value = RationalFunction> {
    poly(vars, terms, max_exp).prop_map(RationalFunction::from_poly)
}

pub fn point(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec((-6i64..=6, 1i64..=3), n).prop_map(|v| v.into_iter().map(|(a, b)| rat(a, b)).collect())
}
