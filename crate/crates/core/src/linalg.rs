//! Exact Gaussian elimination over the rationals and over rational-function fields.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::expr::{RationalFunction, Q};

/// Field operations needed by elimination; constants are produced relative to an existing element.
pub trait Scalar: Clone + PartialEq + Debug {
    fn is_zero_elem(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    /// `o` must be nonzero.
    fn over(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Heuristic size used to prefer simple pivots.
    fn weight(&self) -> usize;
}

impl Scalar for Q {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

impl Scalar for RationalFunction {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        RationalFunction::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        RationalFunction::one(self.vars())
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn weight(&self) -> usize {
        let base = self.num().num_terms() + self.den().num_terms();
        if self.constant_value().is_some() {
            base
        } else {
            base + 8
        }
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    zero: T,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize, zero: &T) -> Self {
        let zero = zero.zero_like();
        Matrix {
            rows,
            cols,
            data: vec![zero.clone(); rows * cols],
            zero,
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize, zero: &T) -> Self {
        let mut m = Self::zeros(rows.len(), cols, zero);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, v) in r.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_cols(cols: Vec<Vec<T>>, rows: usize, zero: &T) -> Self {
        let mut m = Self::zeros(rows, cols.len(), zero);
        for (j, c) in cols.into_iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix");
            for (i, v) in c.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn identity(n: usize, zero: &T) -> Self {
        let mut m = Self::zeros(n, n, zero);
        for i in 0..n {
            m.set(i, i, zero.one_like());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zero_elem(&self) -> &T {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, &self.zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero_elem() {
                        continue;
                    }
                    let v = out.get(i, j).plus(&a.times(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.zero.clone();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero_elem() && !x.is_zero_elem() {
                        acc = acc.plus(&a.times(x));
                    }
                }
                acc
            })
            .collect()
    }

    /// `vᵀ·M`, i.e. the covector pulled back through `M`.
    pub fn apply_transpose(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.rows, v.len(), "dimension mismatch");
        (0..self.cols)
            .map(|j| {
                let mut acc = self.zero.clone();
                for (i, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero_elem() && !x.is_zero_elem() {
                        acc = acc.plus(&a.times(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(&rhs.data) {
            *o = o.minus(r);
        }
        out
    }

    pub fn map<U: Scalar, E>(
        &self,
        zero: &U,
        f: impl Fn(&T) -> Result<U, E>,
    ) -> Result<Matrix<U>, E> {
        let mut out = Matrix::zeros(self.rows, self.cols, zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, f(self.get(i, j))?);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero_elem)
    }
}

/// Reduced row echelon form together with pivot columns and the pivot values divided out.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
    pub pivot_values: Vec<T>,
}

pub fn rref<T: Scalar>(m: &Matrix<T>) -> Echelon<T> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut pivot_values = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let best = (r..a.rows)
            .filter(|&i| !a.get(i, c).is_zero_elem())
            .min_by_key(|&i| a.get(i, c).weight());
        let Some(p) = best else { continue };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let pv = a.get(r, c).clone();
        for j in c..a.cols {
            let v = a.get(r, j).over(&pv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero_elem() {
                continue;
            }
            for j in c..a.cols {
                let rv = a.get(r, j);
                if rv.is_zero_elem() {
                    continue;
                }
                let v = a.get(i, j).minus(&f.times(rv));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        pivot_values.push(pv);
        r += 1;
    }
    Echelon {
        reduced: a,
        pivots,
        pivot_values,
    }
}

pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    rref(m).pivots.len()
}

/// Basis of the right null space `{x : M x = 0}`.
pub fn nullspace<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let e = rref(m);
    nullspace_from(&e, m.cols)
}

fn nullspace_from<T: Scalar>(e: &Echelon<T>, cols: usize) -> Vec<Vec<T>> {
    let zero = e.reduced.zero.clone();
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![zero.clone(); cols];
            v[f] = zero.one_like();
            for (r, &p) in e.pivots.iter().enumerate() {
                v[p] = e.reduced.get(r, f).negated();
            }
            v
        })
        .collect()
}

/// Solution set of `M x = b`: a particular solution (free variables zero) and a null-space basis.
#[derive(Clone, Debug)]
pub struct Solution<T> {
    pub particular: Vec<T>,
    pub kernel: Vec<Vec<T>>,
    pub pivot_values: Vec<T>,
}

/// Solves `M X = B` column by column; `None` when some column is inconsistent.
pub fn solve_many<T: Scalar>(m: &Matrix<T>, rhs: &[Vec<T>]) -> Option<Vec<Solution<T>>> {
    let cols = m.cols;
    let mut aug = Matrix::zeros(m.rows, cols + rhs.len(), &m.zero);
    for i in 0..m.rows {
        for j in 0..cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        for (k, b) in rhs.iter().enumerate() {
            aug.set(i, cols + k, b[i].clone());
        }
    }
    // pivots restricted to the coefficient block
    let e = rref_restricted(&aug, cols);
    let kernel = {
        let zero = m.zero.clone();
        let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![zero.clone(); cols];
                v[f] = zero.one_like();
                for (r, &p) in e.pivots.iter().enumerate() {
                    v[p] = e.reduced.get(r, f).negated();
                }
                v
            })
            .collect::<Vec<_>>()
    };
    let mut out = Vec::new();
    for k in 0..rhs.len() {
        for i in e.pivots.len()..m.rows {
            if !e.reduced.get(i, cols + k).is_zero_elem() {
                return None;
            }
        }
        let mut x = vec![m.zero.clone(); cols];
        for (r, &p) in e.pivots.iter().enumerate() {
            x[p] = e.reduced.get(r, cols + k).clone();
        }
        out.push(Solution {
            particular: x,
            kernel: kernel.clone(),
            pivot_values: e.pivot_values.clone(),
        });
    }
    Some(out)
}

pub fn solve<T: Scalar>(m: &Matrix<T>, b: &[T]) -> Option<Solution<T>> {
    solve_many(m, &[b.to_vec()]).map(|mut v| v.remove(0))
}

fn rref_restricted<T: Scalar>(m: &Matrix<T>, pivot_cols: usize) -> Echelon<T> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut pivot_values = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == a.rows {
            break;
        }
        let best = (r..a.rows)
            .filter(|&i| !a.get(i, c).is_zero_elem())
            .min_by_key(|&i| a.get(i, c).weight());
        let Some(p) = best else { continue };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let pv = a.get(r, c).clone();
        for j in c..a.cols {
            let v = a.get(r, j).over(&pv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero_elem() {
                continue;
            }
            for j in c..a.cols {
                let rv = a.get(r, j);
                if rv.is_zero_elem() {
                    continue;
                }
                let v = a.get(i, j).minus(&f.times(rv));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        pivot_values.push(pv);
        r += 1;
    }
    Echelon {
        reduced: a,
        pivots,
        pivot_values,
    }
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse<T: Scalar>(m: &Matrix<T>) -> Option<Matrix<T>> {
    assert_eq!(m.rows, m.cols, "square matrix required");
    let n = m.rows;
    let id: Vec<Vec<T>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    if i == j {
                        m.zero.one_like()
                    } else {
                        m.zero.clone()
                    }
                })
                .collect()
        })
        .collect();
    let sols = solve_many(m, &id)?;
    if sols.first().is_some_and(|s| !s.kernel.is_empty()) {
        return None;
    }
    Some(Matrix::from_cols(
        sols.into_iter().map(|s| s.particular).collect(),
        n,
        &m.zero,
    ))
}

/// Indices of a maximal linearly independent subset of `vectors`, greedily in order.
pub fn independent_subset<T: Scalar>(vectors: &[Vec<T>], zero: &T) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut current = 0;
    for (k, v) in vectors.iter().enumerate() {
        let mut cols: Vec<Vec<T>> = chosen.iter().map(|&i| vectors[i].clone()).collect();
        cols.push(v.clone());
        let r = rank(&Matrix::from_cols(cols, v.len(), zero));
        if r > current {
            chosen.push(k);
            current = r;
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_expression, qi, Vars};

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        let cols = rows[0].len();
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| qi(x)).collect())
                .collect(),
            cols,
            &qi(0),
        )
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 1);
        assert!(a.apply(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inconsistent_system_has_no_solution() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&a, &[qi(1), qi(3)]).is_none());
        let s = solve(&a, &[qi(1), qi(2)]).unwrap();
        assert_eq!(a.apply(&s.particular), vec![qi(1), qi(2)]);
        assert_eq!(s.kernel.len(), 1);
    }

    #[test]
    fn inverse_over_function_field() {
        let v = Vars::new(["x"]);
        let p = |s: &str| parse_expression(s, &v).unwrap();
        let a = Matrix::from_rows(
            vec![vec![p("x"), p("1")], vec![p("0"), p("x+1")]],
            2,
            &p("0"),
        );
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2, &p("0")));
    }
}
