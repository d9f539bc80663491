//! Coordinate charts, rational maps, vector fields and differential forms with exact Cartan calculus.

use std::fmt;

use thiserror::Error;

use crate::expr::{parse_expression, ExprError, RationalFunction, Vars, Q};
use crate::linalg::Matrix;

pub type RF = RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("chart mismatch: expected `{expected}`, found `{found}`")]
    ChartMismatch { expected: String, found: String },
    #[error("duplicate coordinate `{0}`")]
    DuplicateCoordinate(String),
    #[error("expected {expected} components, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("cannot differentiate a form of degree {0}")]
    DegreeOverflow(usize),
    #[error("cannot contract a 0-form")]
    DegreeUnderflow,
    #[error(transparent)]
    Expr(#[from] ExprError),
}

type Result<T> = std::result::Result<T, GeometryError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    name: String,
    vars: Vars,
}

impl Chart {
    pub fn new<S: AsRef<str>>(
        name: &str,
        coordinates: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let vars = Vars::new(coordinates);
        for i in 0..vars.len() {
            if (0..i).any(|j| vars.name(j) == vars.name(i)) {
                return Err(GeometryError::DuplicateCoordinate(vars.name(i).to_string()));
            }
        }
        Ok(Chart {
            name: name.to_string(),
            vars,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn coordinate(&self, i: usize) -> RF {
        RF::var(&self.vars, i)
    }

    pub fn zero(&self) -> RF {
        RF::zero(&self.vars)
    }

    pub fn one(&self) -> RF {
        RF::one(&self.vars)
    }

    pub fn constant(&self, c: Q) -> RF {
        RF::constant(&self.vars, c)
    }

    pub fn parse(&self, text: &str) -> Result<RF> {
        Ok(parse_expression(text, &self.vars)?)
    }

    pub fn zeros(&self, len: usize) -> Vec<RF> {
        vec![self.zero(); len]
    }

    pub(crate) fn expect(&self, other: &Chart) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(GeometryError::ChartMismatch {
                expected: self.name.clone(),
                found: other.name.clone(),
            })
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name, self.vars)
    }
}

/// Exact point of a chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointP {
    pub chart: Chart,
    pub coords: Vec<Q>,
}

impl PointP {
    pub fn new(chart: &Chart, coords: Vec<Q>) -> Result<Self> {
        if coords.len() != chart.dim() {
            return Err(GeometryError::ComponentCount {
                expected: chart.dim(),
                found: coords.len(),
            });
        }
        Ok(PointP {
            chart: chart.clone(),
            coords,
        })
    }
}

impl fmt::Display for PointP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .chart
            .vars()
            .iter()
            .zip(&self.coords)
            .map(|(v, c)| format!("{v}={}", crate::expr::fmt_q(c)))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn eval_vec(column: &[RF], p: &[Q]) -> std::result::Result<Vec<Q>, ExprError> {
    column.iter().map(|f| f.evaluate_at(p)).collect()
}

pub fn eval_matrix(m: &Matrix<RF>, p: &[Q]) -> std::result::Result<Matrix<Q>, ExprError> {
    m.map(&Q::from_integer(0.into()), |f| f.evaluate_at(p))
}

/// Rational map between charts; one component per target coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothMap {
    source: Chart,
    target: Chart,
    components: Vec<RF>,
}

impl SmoothMap {
    pub fn new(source: &Chart, target: &Chart, components: Vec<RF>) -> Result<Self> {
        if components.len() != target.dim() {
            return Err(GeometryError::ComponentCount {
                expected: target.dim(),
                found: components.len(),
            });
        }
        for c in &components {
            if c.vars() != source.vars() {
                return Err(GeometryError::ChartMismatch {
                    expected: source.name.clone(),
                    found: format!("{}", c.vars()),
                });
            }
        }
        Ok(SmoothMap {
            source: source.clone(),
            target: target.clone(),
            components,
        })
    }

    pub fn parse<S: AsRef<str>>(source: &Chart, target: &Chart, texts: &[S]) -> Result<Self> {
        let comps = texts
            .iter()
            .map(|t| source.parse(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, comps)
    }

    pub fn identity(chart: &Chart) -> Self {
        SmoothMap {
            source: chart.clone(),
            target: chart.clone(),
            components: (0..chart.dim()).map(|i| chart.coordinate(i)).collect(),
        }
    }

    pub fn source(&self) -> &Chart {
        &self.source
    }

    pub fn target(&self) -> &Chart {
        &self.target
    }

    pub fn components(&self) -> &[RF] {
        &self.components
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SmoothMap) -> Result<SmoothMap> {
        self.source.expect(&inner.target)?;
        let comps = self
            .components
            .iter()
            .map(|c| c.substitute(&inner.components, inner.source.vars()))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(SmoothMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            components: comps,
        })
    }

    /// Pulls a function on the target back to the source.
    pub fn pull_function(&self, f: &RF) -> Result<RF> {
        Ok(f.substitute(&self.components, self.source.vars())?)
    }

    /// Substitutes the map into every entry of a column defined on the target.
    pub fn pull_column(&self, col: &[RF]) -> Result<Vec<RF>> {
        col.iter().map(|f| self.pull_function(f)).collect()
    }

    pub fn pull_matrix(&self, m: &Matrix<RF>) -> Result<Matrix<RF>> {
        m.map(&self.source.zero(), |f| self.pull_function(f))
    }

    pub fn jacobian(&self) -> Matrix<RF> {
        let mut j = Matrix::zeros(self.target.dim(), self.source.dim(), &self.source.zero());
        for (i, c) in self.components.iter().enumerate() {
            for k in 0..self.source.dim() {
                j.set(i, k, c.derivative(k));
            }
        }
        j
    }

    pub fn apply_at(&self, p: &PointP) -> Result<PointP> {
        self.source.expect(&p.chart)?;
        PointP::new(&self.target, eval_vec(&self.components, &p.coords)?)
    }

    pub fn jacobian_at(&self, p: &PointP) -> Result<Matrix<Q>> {
        self.source.expect(&p.chart)?;
        Ok(eval_matrix(&self.jacobian(), &p.coords)?)
    }

    pub fn pushforward_at(&self, p: &PointP, v: &[Q]) -> Result<Vec<Q>> {
        if v.len() != self.source.dim() {
            return Err(GeometryError::ComponentCount {
                expected: self.source.dim(),
                found: v.len(),
            });
        }
        Ok(self.jacobian_at(p)?.apply(v))
    }

    /// Symbolic identity test `self == other` on every component.
    pub fn same_as(&self, other: &SmoothMap) -> bool {
        self.source == other.source
            && self.target == other.target
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| (a - b).is_identically_zero())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    pub chart: Chart,
    pub components: Vec<RF>,
}

impl VectorField {
    pub fn new(chart: &Chart, components: Vec<RF>) -> Result<Self> {
        if components.len() != chart.dim() {
            return Err(GeometryError::ComponentCount {
                expected: chart.dim(),
                found: components.len(),
            });
        }
        Ok(VectorField {
            chart: chart.clone(),
            components,
        })
    }

    pub fn parse<S: AsRef<str>>(chart: &Chart, texts: &[S]) -> Result<Self> {
        let comps = texts
            .iter()
            .map(|t| chart.parse(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(chart, comps)
    }

    pub fn zero(chart: &Chart) -> Self {
        VectorField {
            chart: chart.clone(),
            components: chart.zeros(chart.dim()),
        }
    }

    /// Coordinate field `∂_i`.
    pub fn coordinate(chart: &Chart, i: usize) -> Self {
        let mut c = chart.zeros(chart.dim());
        c[i] = chart.one();
        VectorField {
            chart: chart.clone(),
            components: c,
        }
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &RF) -> RF {
        let mut acc = self.chart.zero();
        for (i, x) in self.components.iter().enumerate() {
            if !x.is_zero() {
                acc = acc + x * &f.derivative(i);
            }
        }
        acc
    }

    pub fn scale(&self, f: &RF) -> Self {
        VectorField {
            chart: self.chart.clone(),
            components: self.components.iter().map(|c| c * f).collect(),
        }
    }

    pub fn add(&self, o: &VectorField) -> Self {
        VectorField {
            chart: self.chart.clone(),
            components: self
                .components
                .iter()
                .zip(&o.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &VectorField) -> Self {
        VectorField {
            chart: self.chart.clone(),
            components: self
                .components
                .iter()
                .zip(&o.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RF::is_zero)
    }
}

/// Strictly increasing `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Sorts an index list; returns the sign of the permutation, or `None` on a repeated index.
fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

/// Differential form of degree at most 3, stored densely over increasing multi-indices.
#[derive(Clone, Debug, PartialEq)]
pub struct KForm {
    pub chart: Chart,
    degree: usize,
    coeffs: Vec<RF>,
}

impl KForm {
    pub const MAX_DEGREE: usize = 3;

    pub fn zero(chart: &Chart, degree: usize) -> Result<Self> {
        if degree > Self::MAX_DEGREE {
            return Err(GeometryError::DegreeOverflow(degree));
        }
        let len = combinations(chart.dim(), degree).len();
        Ok(KForm {
            chart: chart.clone(),
            degree,
            coeffs: chart.zeros(len),
        })
    }

    pub fn function(f: RF, chart: &Chart) -> Self {
        KForm {
            chart: chart.clone(),
            degree: 0,
            coeffs: vec![f],
        }
    }

    pub fn one_form(chart: &Chart, components: Vec<RF>) -> Result<Self> {
        if components.len() != chart.dim() {
            return Err(GeometryError::ComponentCount {
                expected: chart.dim(),
                found: components.len(),
            });
        }
        Ok(KForm {
            chart: chart.clone(),
            degree: 1,
            coeffs: components,
        })
    }

    pub fn parse_one_form<S: AsRef<str>>(chart: &Chart, texts: &[S]) -> Result<Self> {
        let comps = texts
            .iter()
            .map(|t| chart.parse(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::one_form(chart, comps)
    }

    /// Builds a form from `(increasing index, coefficient)` entries; unspecified entries are zero.
    pub fn from_entries(
        chart: &Chart,
        degree: usize,
        entries: Vec<(Vec<usize>, RF)>,
    ) -> Result<Self> {
        let mut f = Self::zero(chart, degree)?;
        for (idx, c) in entries {
            if idx.len() != degree {
                return Err(GeometryError::ComponentCount {
                    expected: degree,
                    found: idx.len(),
                });
            }
            let (sorted, odd) = sort_with_sign(&idx).ok_or(GeometryError::ComponentCount {
                expected: degree,
                found: 0,
            })?;
            let pos = f.position(&sorted);
            let c = if odd { -c } else { c };
            f.coeffs[pos] = &f.coeffs[pos] + &c;
        }
        Ok(f)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (Vec<usize>, &RF)> {
        combinations(self.chart.dim(), self.degree)
            .into_iter()
            .zip(&self.coeffs)
    }

    /// For 1-forms, the coefficient column.
    pub fn components(&self) -> &[RF] {
        &self.coeffs
    }

    fn position(&self, sorted: &[usize]) -> usize {
        combinations(self.chart.dim(), self.degree)
            .iter()
            .position(|c| c == sorted)
            .expect("index in range")
    }

    /// Coefficient at an arbitrary (not necessarily increasing) index, with sign.
    pub fn get(&self, idx: &[usize]) -> RF {
        match sort_with_sign(idx) {
            None => self.chart.zero(),
            Some((sorted, odd)) => {
                let c = self.coeffs[self.position(&sorted)].clone();
                if odd {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RF::is_zero)
    }

    fn zip_with(&self, o: &KForm, f: impl Fn(&RF, &RF) -> RF) -> Result<KForm> {
        self.chart.expect(&o.chart)?;
        assert_eq!(self.degree, o.degree, "degree mismatch");
        Ok(KForm {
            chart: self.chart.clone(),
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, o: &KForm) -> Result<KForm> {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &KForm) -> Result<KForm> {
        self.zip_with(o, |a, b| a - b)
    }

    pub fn scale(&self, f: &RF) -> KForm {
        KForm {
            chart: self.chart.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    /// Evaluates on `degree` vector fields.
    pub fn evaluate(&self, fields: &[&VectorField]) -> RF {
        assert_eq!(fields.len(), self.degree);
        let n = self.chart.dim();
        let mut acc = self.chart.zero();
        let mut idx = vec![0usize; self.degree];
        let total = n.pow(self.degree as u32);
        for code in 0..total {
            let mut c = code;
            for slot in idx.iter_mut() {
                *slot = c % n;
                c /= n;
            }
            let coef = self.get(&idx);
            if coef.is_zero() {
                continue;
            }
            let mut term = coef;
            for (slot, x) in idx.iter().zip(fields) {
                term = term * &x.components[*slot];
            }
            acc = acc + term;
        }
        acc
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (idx, c) in self.coefficients() {
            if c.is_zero() {
                continue;
            }
            let basis: Vec<String> = idx
                .iter()
                .map(|&i| format!("d{}", self.chart.vars().name(i)))
                .collect();
            if basis.is_empty() {
                parts.push(c.to_string());
            } else {
                parts.push(format!("({c})*{}", basis.join("^")));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*∂{}", self.chart.vars().name(i)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Differential `df` of a function.
pub fn differential(chart: &Chart, f: &RF) -> KForm {
    KForm {
        chart: chart.clone(),
        degree: 1,
        coeffs: (0..chart.dim()).map(|i| f.derivative(i)).collect(),
    }
}

pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    x.chart.expect(&y.chart)?;
    let comps = (0..x.chart.dim())
        .map(|i| x.apply(&y.components[i]) - y.apply(&x.components[i]))
        .collect();
    Ok(VectorField {
        chart: x.chart.clone(),
        components: comps,
    })
}

pub fn exterior_derivative(form: &KForm) -> Result<KForm> {
    let k = form.degree;
    if k >= KForm::MAX_DEGREE {
        return Err(GeometryError::DegreeOverflow(k));
    }
    let n = form.chart.dim();
    let coeffs = combinations(n, k + 1)
        .into_iter()
        .map(|idx| {
            let mut acc = form.chart.zero();
            for j in 0..idx.len() {
                let mut rest = idx.clone();
                let var = rest.remove(j);
                let d = form.get(&rest).derivative(var);
                acc = if j % 2 == 0 { acc + d } else { acc - d };
            }
            acc
        })
        .collect();
    Ok(KForm {
        chart: form.chart.clone(),
        degree: k + 1,
        coeffs,
    })
}

/// Contraction in the first slot.
pub fn interior_product(x: &VectorField, form: &KForm) -> Result<KForm> {
    x.chart.expect(&form.chart)?;
    if form.degree == 0 {
        return Err(GeometryError::DegreeUnderflow);
    }
    let n = form.chart.dim();
    let coeffs = combinations(n, form.degree - 1)
        .into_iter()
        .map(|rest| {
            let mut acc = form.chart.zero();
            for (i, xi) in x.components.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                let mut idx = vec![i];
                idx.extend_from_slice(&rest);
                let c = form.get(&idx);
                if !c.is_zero() {
                    acc = acc + xi * &c;
                }
            }
            acc
        })
        .collect();
    Ok(KForm {
        chart: form.chart.clone(),
        degree: form.degree - 1,
        coeffs,
    })
}

/// Cartan formula `ι_X dω + d ι_X ω` for forms of degree at most 2.
pub fn lie_derivative(x: &VectorField, form: &KForm) -> Result<KForm> {
    x.chart.expect(&form.chart)?;
    let a = interior_product(x, &exterior_derivative(form)?)?;
    if form.degree == 0 {
        return Ok(a);
    }
    let b = exterior_derivative(&interior_product(x, form)?)?;
    a.add(&b)
}

pub fn lie_derivative_one_form(x: &VectorField, alpha: &KForm) -> Result<KForm> {
    assert_eq!(alpha.degree, 1, "one-form expected");
    lie_derivative(x, alpha)
}

fn det(rows: &[Vec<RF>], zero: &RF) -> RF {
    match rows.len() {
        0 => RF::one(zero.vars()),
        1 => rows[0][0].clone(),
        n => {
            let mut acc = zero.clone();
            for c in 0..n {
                if rows[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<RF>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != c)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &rows[0][c] * &det(&minor, zero);
                acc = if c % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

pub fn pullback_form(map: &SmoothMap, form: &KForm) -> Result<KForm> {
    map.target.expect(&form.chart)?;
    let k = form.degree;
    let jac = map.jacobian();
    let zero = map.source.zero();
    let pulled: Vec<(Vec<usize>, RF)> = form
        .coefficients()
        .filter(|(_, c)| !c.is_zero())
        .map(|(idx, c)| Ok((idx, map.pull_function(c)?)))
        .collect::<Result<_>>()?;
    let coeffs = combinations(map.source.dim(), k)
        .into_iter()
        .map(|cols| {
            let mut acc = zero.clone();
            for (rows, c) in &pulled {
                let minor: Vec<Vec<RF>> = rows
                    .iter()
                    .map(|&r| cols.iter().map(|&cidx| jac.get(r, cidx).clone()).collect())
                    .collect();
                let d = det(&minor, &zero);
                if !d.is_zero() {
                    acc = acc + c * &d;
                }
            }
            acc
        })
        .collect();
    Ok(KForm {
        chart: map.source.clone(),
        degree: k,
        coeffs,
    })
}

/// Vector field along an embedding: the field's components substituted by the embedding.
pub fn restrict_field_along(embedding: &SmoothMap, x: &VectorField) -> Result<Vec<RF>> {
    embedding.target.expect(&x.chart)?;
    embedding.pull_column(&x.components)
}

/// Forms restrict by full pullback.
pub fn restrict_form_along(embedding: &SmoothMap, form: &KForm) -> Result<KForm> {
    pullback_form(embedding, form)
}
