use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ExprError, Polynomial, Vars, Q};

/// Reduced quotient of polynomials with a denominator of leading coefficient one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, ExprError> {
        if den.is_zero() {
            return Err(ExprError::DivisionByZeroPolynomial);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            let one = Polynomial::one(num.vars());
            return RationalFunction { num, den: one };
        }
        if let Some(c) = den.constant_value() {
            let one = Polynomial::one(num.vars());
            return RationalFunction {
                num: num.scale(&c.recip()),
                den: one,
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading_coefficient();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Already coprime parts; only the scaling is normalized.
    fn with_monic_den(num: Polynomial, den: Polynomial) -> Self {
        let lc = den.leading_coefficient();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let one = Polynomial::one(p.vars());
        RationalFunction { num: p, den: one }
    }

    pub fn zero(vars: &Vars) -> Self {
        Self::from_poly(Polynomial::zero(vars))
    }

    pub fn one(vars: &Vars) -> Self {
        Self::from_poly(Polynomial::one(vars))
    }

    pub fn constant(vars: &Vars, c: Q) -> Self {
        Self::from_poly(Polynomial::constant(vars, c))
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::from_poly(Polynomial::var(vars, i))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self, ExprError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExprError> {
        if rhs.is_zero() {
            return Err(ExprError::DivisionByZeroPolynomial);
        }
        Ok(self * &rhs.recip()?)
    }

    /// Partial derivative with respect to the variable at index `i`.
    pub fn derivative(&self, i: usize) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative(i));
        }
        let dn = self.num.derivative(i);
        let dd = self.den.derivative(i);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        // with d = g e and d' = g k: (n/d)' = (n' e - n k) / (g e^2); only g can share factors
        let g = self.den.gcd(&dd);
        let e = self.den.div_exact(&g).expect("gcd divides");
        let k = dd.div_exact(&g).expect("gcd divides");
        let t = &(&dn * &e) - &(&self.num * &k);
        if t.is_zero() {
            return Self::zero(self.vars());
        }
        let h = if g.is_one() { g.clone() } else { t.gcd(&g) };
        let num = t.div_exact(&h).expect("gcd divides");
        let rest = g.div_exact(&h).expect("gcd divides");
        Self::with_monic_den(num, &(&e * &e) * &rest)
    }

    /// Partial derivative by variable name.
    pub fn partial_derivative(&self, name: &str) -> Result<Self, ExprError> {
        let i = self
            .vars()
            .index_of(name)
            .ok_or_else(|| ExprError::UnknownVariable(name.to_string()))?;
        Ok(self.derivative(i))
    }

    pub fn evaluate_at(&self, point: &[Q]) -> Result<Q, ExprError> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(ExprError::PoleAtPoint);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Composes with `assignment`, one rational function (over a common target variable set) per variable.
    pub fn substitute(
        &self,
        assignment: &[RationalFunction],
        target: &Vars,
    ) -> Result<Self, ExprError> {
        assert_eq!(
            assignment.len(),
            self.vars().len(),
            "assignment must cover every variable"
        );
        let num = substitute_poly(&self.num, assignment, target);
        if self.den.is_one() {
            return Ok(num);
        }
        let den = substitute_poly(&self.den, assignment, target);
        if den.is_zero() {
            return Err(ExprError::IdenticallyZeroDenominator);
        }
        num.checked_div(&den)
            .map_err(|_| ExprError::IdenticallyZeroDenominator)
    }

    /// Re-expresses over another variable set containing all the names used here.
    pub fn embed(&self, target: &Vars) -> Option<Self> {
        Some(RationalFunction {
            num: self.num.embed(target)?,
            den: self.den.embed(target)?,
        })
    }
}

fn substitute_poly(
    p: &Polynomial,
    assignment: &[RationalFunction],
    target: &Vars,
) -> RationalFunction {
    let n = assignment.len();
    let mut powers: Vec<Vec<RationalFunction>> = vec![vec![RationalFunction::one(target)]; n];
    let mut acc = RationalFunction::zero(target);
    // accumulate over a common denominator per term group to limit gcd work
    for (m, c) in p.terms() {
        let mut t = RationalFunction::constant(target, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap() * &assignment[i];
                powers[i].push(next);
            }
            t = &t * &powers[i][e as usize];
        }
        acc = &acc + &t;
    }
    acc
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RationalFunction::from_poly(num);
            }
            return RationalFunction::reduce(num, self.den.clone());
        }
        // Henrici: with g = gcd(b, d), only gcd(t, g) can be nontrivial
        let g = self.den.gcd(&rhs.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = rhs.den.div_exact(&g).expect("gcd divides");
        let t = &(&self.num * &d1) + &(&rhs.num * &b1);
        if t.is_zero() {
            return RationalFunction::zero(self.vars());
        }
        if g.is_one() {
            return RationalFunction::with_monic_den(t, &b1 * &d1);
        }
        let h = t.gcd(&g);
        let num = t.div_exact(&h).expect("gcd divides");
        let rest = g.div_exact(&h).expect("gcd divides");
        RationalFunction::with_monic_den(num, &(&b1 * &d1) * &rest)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero(self.vars());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RationalFunction::with_monic_den(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by the zero function; use [`RationalFunction::checked_div`] otherwise.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs)
            .expect("division by the zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let n = self.num.to_string();
            if self.num.num_terms() == 1 && !n.starts_with('-') {
                write!(f, "{n}/({})", self.den)
            } else {
                write!(f, "({n})/({})", self.den)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_expression, q, qi};

    fn xy() -> Vars {
        Vars::new(["x", "y"])
    }

    fn p(s: &str) -> RationalFunction {
        parse_expression(s, &xy()).unwrap()
    }

    #[test]
    fn quotient_rule_example() {
        // d/dx x/(x+y) = y/(x+y)^2
        let f = p("x/(x+y)");
        assert_eq!(f.partial_derivative("x").unwrap(), p("y/(x+y)^2"));
    }

    #[test]
    fn power_rule_and_constant() {
        assert_eq!(p("x^2*y").partial_derivative("x").unwrap(), p("2*x*y"));
        assert!(p("1")
            .partial_derivative("x")
            .unwrap()
            .is_identically_zero());
        assert_eq!(
            p("1").partial_derivative("w"),
            Err(ExprError::UnknownVariable("w".into()))
        );
    }

    #[test]
    fn evaluation_and_poles() {
        let f = p("x/(x+y)");
        assert_eq!(f.evaluate_at(&[qi(1), qi(1)]), Ok(q(1, 2)));
        assert_eq!(f.evaluate_at(&[qi(1), qi(-1)]), Err(ExprError::PoleAtPoint));
        assert_eq!(p("(x^2-y)/3").evaluate_at(&[qi(2), qi(1)]), Ok(qi(1)));
    }

    #[test]
    fn substitution_examples() {
        let u = Vars::new(["u"]);
        let uu = RationalFunction::var(&u, 0);
        let f = p("x+y");
        assert_eq!(
            f.substitute(&[uu.clone(), uu.clone()], &u).unwrap(),
            uu.scale(&qi(2))
        );
        let g = parse_expression("1/x", &Vars::new(["x"])).unwrap();
        assert_eq!(
            g.substitute(&[&uu - &uu], &u),
            Err(ExprError::IdenticallyZeroDenominator)
        );
        let x = Vars::new(["x"]);
        let id = RationalFunction::var(&x, 0);
        assert_eq!(g.substitute(&[id], &x).unwrap(), g);
    }

    #[test]
    fn zero_tests() {
        assert!(p("0").is_identically_zero());
        assert!(p("x-x").is_identically_zero());
        assert!(!p("x*y - y*x + 1").is_identically_zero());
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let f = p("1/(2*x+2)");
        assert!(f.den().leading_coefficient().is_one());
        assert_eq!(f.to_string(), "1/2/(x + 1)");
        assert_eq!(p(&f.to_string()), f);
    }
}
