//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := ('-')? atom ('^' uint)?
//! atom     := rational | ident | '(' expr ')'
//! rational := int ('/' uint)?
//! ident    := [A-Za-z_][A-Za-z0-9_]*
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ExprError, RationalFunction, Vars, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expression {
    Rational(Q),
    Var(String),
    Neg(Box<Expression>),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Div(Box<Expression>, Box<Expression>),
    Pow(Box<Expression>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ExprError::SyntaxError {
                position: i,
                expected: "number, identifier, operator or parenthesis".into(),
            });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, expected: &str) -> Result<T, ExprError> {
        Err(ExprError::SyntaxError {
            position: self.pos(),
            expected: expected.to_string(),
        })
    }

    fn expr(&mut self) -> Result<Expression, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    lhs = Expression::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    lhs = Expression::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expression, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    lhs = Expression::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Sym('/') => {
                    self.bump();
                    lhs = Expression::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expression, ExprError> {
        let negate = if self.peek() == &Tok::Sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let mut base = self.atom()?;
        if self.peek() == &Tok::Sym('^') {
            self.bump();
            match self.bump() {
                Tok::Int(n) => {
                    let e: u32 = n.try_into().map_err(|_| ExprError::SyntaxError {
                        position: self.toks[self.at - 1].0,
                        expected: "exponent below 2^32".into(),
                    })?;
                    base = Expression::Pow(Box::new(base), e);
                }
                _ => {
                    self.at -= 1;
                    return self.err("unsigned integer exponent");
                }
            }
        }
        Ok(if negate {
            Expression::Neg(Box::new(base))
        } else {
            base
        })
    }

    fn atom(&mut self) -> Result<Expression, ExprError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if self.peek() == &Tok::Sym('/') {
                    if let Tok::Int(d) = self.peek2().clone() {
                        self.bump();
                        self.bump();
                        if d.is_zero() {
                            return Err(ExprError::DivisionByZeroPolynomial);
                        }
                        return Ok(Expression::Rational(Q::new(n, d)));
                    }
                }
                Ok(Expression::Rational(Q::from_integer(n)))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Expression::Var(name))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != &Tok::Sym(')') {
                    return self.err("`)`");
                }
                self.bump();
                Ok(e)
            }
            _ => self.err("number, identifier or `(`"),
        }
    }
}

/// Parses text into an abstract syntax tree without resolving variables.
pub fn parse_ast(text: &str) -> Result<Expression, ExprError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return p.err("operator or end of input");
    }
    Ok(e)
}

impl Expression {
    pub fn to_rational_function(&self, vars: &Vars) -> Result<RationalFunction, ExprError> {
        Ok(match self {
            Expression::Rational(c) => RationalFunction::constant(vars, c.clone()),
            Expression::Var(name) => {
                let i = vars
                    .index_of(name)
                    .ok_or_else(|| ExprError::UnknownVariable(name.clone()))?;
                RationalFunction::var(vars, i)
            }
            Expression::Neg(a) => -a.to_rational_function(vars)?,
            Expression::Add(a, b) => {
                a.to_rational_function(vars)? + b.to_rational_function(vars)?
            }
            Expression::Sub(a, b) => {
                a.to_rational_function(vars)? - b.to_rational_function(vars)?
            }
            Expression::Mul(a, b) => {
                a.to_rational_function(vars)? * b.to_rational_function(vars)?
            }
            Expression::Div(a, b) => a
                .to_rational_function(vars)?
                .checked_div(&b.to_rational_function(vars)?)?,
            Expression::Pow(a, e) => a.to_rational_function(vars)?.pow(*e),
        })
    }
}

/// Parses `text` and returns its canonical rational function over `vars`.
pub fn parse_expression(text: &str, vars: &Vars) -> Result<RationalFunction, ExprError> {
    parse_ast(text)?.to_rational_function(vars)
}
