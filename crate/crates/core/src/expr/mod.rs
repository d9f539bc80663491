//! Exact scalar arithmetic: rationals, polynomials, rational functions and the expression language.

mod parser;
mod poly;
mod ratfunc;

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

pub use parser::{parse_ast, parse_expression, Expression};
pub use poly::{Monomial, Polynomial};
pub use ratfunc::RationalFunction;

pub type Q = BigRational;

/// Builds a rational from a small numerator and denominator.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn fmt_q(c: &Q) -> String {
    poly::fmt_rational(c)
}

/// Ordered, shared list of variable names.
#[derive(Clone, Debug)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Self {
        Vars(names.into_iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn same(&self, other: &Vars) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Vars {}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {position}: expected {expected}")]
    SyntaxError { position: usize, expected: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("substituted denominator is identically zero")]
    IdenticallyZeroDenominator,
    #[error("denominator vanishes at the point")]
    PoleAtPoint,
}
