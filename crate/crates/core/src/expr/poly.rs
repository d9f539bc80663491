use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Vars, Q};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn meet(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: Vars,
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero(vars: &Vars) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Q) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Q::one())
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, Monomial(e), Q::one())
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: Q) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from raw terms, dropping zero coefficients and merging duplicates.
    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length mismatch");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.is_zero() {
            Some(Q::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// Leading term in graded-lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Q {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> Self {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut d = m.clone();
                d.0[i] -= 1;
                p.add_term(d, c * Q::from_integer(e.into()));
            }
        }
        p
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Coefficients with respect to variable `i`; entry `k` multiplies `x_i^k`.
    pub fn coefficients_in(&self, i: usize) -> Vec<Polynomial> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Self::zero(&self.vars); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            let mut r = m.clone();
            r.0[i] = 0;
            out[k].terms.insert(r, c.clone());
        }
        out
    }

    fn leading_coefficient_in(&self, i: usize) -> Polynomial {
        let d = self.degree_in(i);
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            if m.0[i] == d {
                let mut r = m.clone();
                r.0[i] = 0;
                out.terms.insert(r, c.clone());
            }
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut q = Self::zero(&self.vars);
        let mut r = self.clone();
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&rm) {
                return None;
            }
            let tm = rm.div(&lm);
            let tc = rc / &lc;
            r = &r - &d.mul_monomial(&tm, &tc);
            q.add_term(tm, tc);
        }
        Some(q)
    }

    fn pseudo_remainder(&self, b: &Polynomial, i: usize) -> Polynomial {
        let db = b.degree_in(i);
        let lb = b.leading_coefficient_in(i);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(i) >= db {
            let dr = r.degree_in(i);
            let lr = r.leading_coefficient_in(i);
            let mut shift = vec![0; self.vars.len()];
            shift[i] = dr - db;
            let shifted = (&lr * b).mul_monomial(&Monomial(shift), &Q::one());
            r = &(&r * &lb) - &shifted;
        }
        r
    }

    fn content_in(&self, i: usize, fast: bool) -> Polynomial {
        let mut coeffs: Vec<Polynomial> = self
            .coefficients_in(i)
            .into_iter()
            .filter(|c| !c.is_zero())
            .collect();
        coeffs.sort_by_key(|c| (c.num_terms(), c.total_degree()));
        let mut g = Self::zero(&self.vars);
        for c in coeffs {
            g = g.gcd_with(&c, fast);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_part_in(&self, i: usize, fast: bool) -> Polynomial {
        let c = self.content_in(i, fast);
        self.div_exact(&c).expect("content divides").monic()
    }

    /// Evaluates every variable except `keep`.
    fn specialize_except(&self, keep: usize, values: &[Q]) -> Polynomial {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            let mut e = vec![0; m.0.len()];
            for (j, (&d, x)) in m.0.iter().zip(values).enumerate() {
                if j == keep {
                    e[j] = d;
                } else if d > 0 {
                    t *= num_traits::pow(x.clone(), d as usize);
                }
            }
            out.add_term(Monomial(e), t);
        }
        out
    }

    /// Sufficient test for a trivial gcd. If `g | a, b` has positive degree in `x_i`, its
    /// specialization at a point keeping both leading coefficients in `x_i` alive still divides
    /// both specializations with the same degree; so univariate coprimality for every variable
    /// forces `g` constant.
    fn coprime_by_specialization(&self, other: &Polynomial) -> bool {
        let n = self.vars.len();
        let used: Vec<usize> = (0..n).filter(|&i| self.uses_var(i) || other.uses_var(i)).collect();
        if used.len() < 2 {
            return false;
        }
        const PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
        used.iter().all(|&i| {
            if !self.uses_var(i) || !other.uses_var(i) {
                return true;
            }
            let (la, lb) = (self.leading_coefficient_in(i), other.leading_coefficient_in(i));
            (0..4).any(|shift| {
                let values: Vec<Q> = (0..n)
                    .map(|j| Q::from_integer(PRIMES[(j + shift) % PRIMES.len()].into()) / Q::from_integer((shift as i64 + 1).into()))
                    .collect();
                if la.eval(&values).is_zero() || lb.eval(&values).is_zero() {
                    return false;
                }
                let (a, b) = (self.specialize_except(i, &values), other.specialize_except(i, &values));
                a.gcd(&b).is_constant()
            })
        })
    }

    /// Positive multiple with coprime integer coefficients.
    fn integral_primitive(&self) -> Polynomial {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        if num.is_zero() {
            return self.clone();
        }
        self.scale(&Q::new(den, num))
    }

    /// Monic greatest common divisor: trivial cases, a coprimality test, the heuristic integer
    /// gcd, and finally a recursive primitive remainder sequence.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        self.gcd_with(other, true)
    }

    /// `fast = false` runs the plain remainder sequence throughout; kept as a test oracle.
    pub(crate) fn gcd_with(&self, other: &Polynomial, fast: bool) -> Polynomial {
        assert!(self.vars == other.vars, "variable sets differ");
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one(&self.vars);
        }
        if self == other {
            return self.monic();
        }
        if self.num_terms() == 1 || other.num_terms() == 1 {
            let mono = if self.num_terms() == 1 { self } else { other };
            let rest = if self.num_terms() == 1 { other } else { self };
            let mut m = mono.leading().unwrap().0.clone();
            for (k, _) in rest.terms() {
                m = m.meet(k);
            }
            return Self::monomial(&self.vars, m, Q::one());
        }
        let n = self.vars.len();
        for i in 0..n {
            let (a, b) = (self.uses_var(i), other.uses_var(i));
            if a && !b {
                return self.content_in(i, fast).gcd_with(other, fast);
            }
            if b && !a {
                return self.gcd_with(&other.content_in(i, fast), fast);
            }
        }
        if fast {
            if self.coprime_by_specialization(other) {
                return Self::one(&self.vars);
            }
            let used: Vec<usize> = (0..n).filter(|&i| self.uses_var(i) || other.uses_var(i)).collect();
            if let Some(g) = heuristic_gcd(&self.integral_primitive(), &other.integral_primitive(), &used) {
                return g.monic();
            }
        }
        let i = (0..n)
            .filter(|&i| self.uses_var(i))
            .min_by_key(|&i| self.degree_in(i).min(other.degree_in(i)))
            .expect("non-constant polynomial uses a variable");
        let ca = self.content_in(i, fast);
        let cb = other.content_in(i, fast);
        let c = ca.gcd_with(&cb, fast);
        let pa = self.div_exact(&ca).expect("content divides").monic();
        let pb = other.div_exact(&cb).expect("content divides").monic();
        let (mut r0, mut r1) = if pa.degree_in(i) >= pb.degree_in(i) {
            (pa, pb)
        } else {
            (pb, pa)
        };
        let g = loop {
            let r = r0.pseudo_remainder(&r1, i);
            if r.is_zero() {
                break r1.primitive_part_in(i, fast);
            }
            if r.degree_in(i) == 0 {
                break Self::one(&self.vars);
            }
            r0 = r1;
            r1 = r.primitive_part_in(i, fast);
        };
        (&c * &g).monic()
    }

    /// Re-expresses the polynomial over a different variable set with the same names in another order
    /// or a superset of names.
    pub fn embed(&self, target: &Vars) -> Option<Polynomial> {
        let map: Option<Vec<usize>> = self.vars.iter().map(|v| target.index_of(v)).collect();
        let map = map?;
        let mut p = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (k, &j) in map.iter().enumerate() {
                e[j] += m.0[k];
            }
            p.add_term(Monomial(e), c.clone());
        }
        Some(p)
    }
}

fn integer_content(p: &Polynomial) -> BigInt {
    p.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c.numer()))
}

fn max_norm(p: &Polynomial) -> BigInt {
    p.terms.values().map(|c| c.numer().abs()).max().unwrap_or_else(BigInt::zero)
}

/// Substitutes the integer `xi` for variable `v`.
fn eval_var(p: &Polynomial, v: usize, xi: &BigInt) -> Polynomial {
    let mut out = Polynomial::zero(&p.vars);
    for (m, c) in &p.terms {
        let mut r = m.clone();
        r.0[v] = 0;
        out.add_term(r, c * Q::from_integer(num_traits::pow(xi.clone(), m.0[v] as usize)));
    }
    out
}

fn symmetric_mod(c: &BigInt, xi: &BigInt) -> BigInt {
    let r = c.mod_floor(xi);
    if &r * 2 > *xi {
        r - xi
    } else {
        r
    }
}

/// Heuristic gcd of primitive integer polynomials in the variables `used`: evaluate the last
/// variable at a large integer, recurse, and lift back by symmetric `xi`-adic expansion. A primitive
/// lift dividing both inputs is their gcd; `None` means the heuristic gave up.
fn heuristic_gcd(a: &Polynomial, b: &Polynomial, used: &[usize]) -> Option<Polynomial> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let Some((&v, rest)) = used.split_last() else {
        let g = a.constant_value()?.numer().gcd(b.constant_value()?.numer());
        return Some(Polynomial::constant(&a.vars, Q::from_integer(g)));
    };
    if !a.uses_var(v) && !b.uses_var(v) {
        return heuristic_gcd(a, b, rest);
    }
    let mut xi: BigInt = 2 * max_norm(a).min(max_norm(b)) + 29;
    for _ in 0..6 {
        let (ea, eb) = (eval_var(a, v, &xi), eval_var(b, v, &xi));
        if !ea.is_zero() && !eb.is_zero() {
            // gcd(A(xi), B(xi)) = gcd of contents times the gcd of primitive parts
            let (ca, cb) = (integer_content(&ea), integer_content(&eb));
            let inner = heuristic_gcd(&ea.integral_primitive(), &eb.integral_primitive(), rest)?;
            let mut gamma = inner.scale(&Q::from_integer(ca.gcd(&cb)));
            let mut lifted = Polynomial::zero(&a.vars);
            let mut power = 0u32;
            while !gamma.is_zero() {
                let mut digit = Polynomial::zero(&a.vars);
                for (m, c) in &gamma.terms {
                    digit.add_term(m.clone(), Q::from_integer(symmetric_mod(c.numer(), &xi)));
                }
                let mut shift = vec![0; a.vars.len()];
                shift[v] = power;
                lifted = &lifted + &digit.mul_monomial(&Monomial(shift), &Q::one());
                gamma = (&gamma - &digit).scale(&Q::new(BigInt::one(), xi.clone()));
                power += 1;
            }
            if !lifted.is_zero() {
                let g = lifted.integral_primitive();
                if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                    return Some(g);
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.vars == rhs.vars, "variable sets differ");
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.vars == rhs.vars, "variable sets differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.vars == rhs.vars, "variable sets differ");
        let mut out = Polynomial::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

pub(crate) fn fmt_rational(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            for (v, &e) in self.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&a), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vars() -> Vars {
        Vars::new(["x", "y", "z"])
    }

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let a = Monomial(vec![1, 0, 0]);
        let b = Monomial(vec![0, 2, 0]);
        let c = Monomial(vec![0, 1, 1]);
        assert!(a < b);
        assert!(c < b);
    }

    #[test]
    fn gcd_of_shared_linear_factor() {
        let v = vars();
        let x = Polynomial::var(&v, 0);
        let y = Polynomial::var(&v, 1);
        let z = Polynomial::var(&v, 2);
        let f = &(&x + &y) * &(&x - &z);
        let g = &(&x + &y) * &(&y + &z);
        let expected = (&x + &y).monic();
        assert_eq!(f.gcd(&g), expected);
    }

    #[test]
    fn gcd_coprime_is_one() {
        let v = vars();
        let x = Polynomial::var(&v, 0);
        let y = Polynomial::var(&v, 1);
        let f = &(&x * &x) + &Polynomial::one(&v);
        let g = &x + &y;
        assert!(f.gcd(&g).is_one());
    }

    #[test]
    fn gcd_keeps_factor_shared_in_one_variable() {
        let v = vars();
        let y = Polynomial::var(&v, 1);
        let z = Polynomial::var(&v, 2);
        let one = Polynomial::one(&v);
        let zz = (&(&z * &z) + &one).pow(2);
        let a = (&y * &zz).scale(&Q::from_integer((-2).into()));
        let b = &(&(&y * &y) + &one).pow(2) * &zz;
        assert_eq!(a.gcd(&b), zz);
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -3i64..=3), 1..=3)
            .prop_map(|ts| Polynomial::from_terms(&vars(), ts.into_iter().map(|(e, c)| (e, Q::from_integer(c.into())))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn fast_gcd_matches_remainder_sequence(a in small_poly(), b in small_poly(), c in small_poly()) {
            let (f, g) = (&a * &c, &b * &c);
            prop_assert_eq!(f.gcd(&g), f.gcd_with(&g, false));
        }
    }

    #[test]
    fn exact_division_detects_non_divisors() {
        let v = vars();
        let x = Polynomial::var(&v, 0);
        let y = Polynomial::var(&v, 1);
        let f = &(&x * &x) - &(&y * &y);
        assert_eq!(f.div_exact(&(&x - &y)), Some(&x + &y));
        assert_eq!(f.div_exact(&(&x + &Polynomial::one(&v))), None);
    }

    #[test]
    fn display_uses_grlex_descending() {
        let v = vars();
        let x = Polynomial::var(&v, 0);
        let y = Polynomial::var(&v, 1);
        let f = &(&x * &x).scale(&q(2)) - &y;
        assert_eq!(f.to_string(), "2*x^2 - y");
    }
}
