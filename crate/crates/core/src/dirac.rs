//! Sections of `TM ⊕ T*M`, the pairing, Dorfman and Courant brackets, and Dirac frames.

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::{fmt_q, Q};
use crate::geometry::{
    combinations, differential, exterior_derivative, interior_product, lie_bracket,
    lie_derivative_one_form, Chart, KForm, PointP, VectorField, RF,
};
use crate::linalg::{rank, Matrix, Scalar};
use crate::report::Report;

/// A vector and a covector with the same number of slots, over any field.
#[derive(Clone, Debug, PartialEq)]
pub struct PVec<T> {
    pub vector: Vec<T>,
    pub covector: Vec<T>,
}

impl<T: Scalar> PVec<T> {
    pub fn new(vector: Vec<T>, covector: Vec<T>) -> Self {
        assert_eq!(
            vector.len(),
            covector.len(),
            "vector/covector length mismatch"
        );
        PVec { vector, covector }
    }

    pub fn zero(n: usize, zero: &T) -> Self {
        PVec {
            vector: vec![zero.zero_like(); n],
            covector: vec![zero.zero_like(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.vector.len()
    }

    /// `α(Y) + β(X)`.
    pub fn pairing(&self, o: &PVec<T>) -> T {
        let mut acc = self.vector[0].zero_like();
        for i in 0..self.dim() {
            acc = acc
                .plus(&self.covector[i].times(&o.vector[i]))
                .plus(&o.covector[i].times(&self.vector[i]));
        }
        acc
    }

    pub fn add(&self, o: &PVec<T>) -> Self {
        PVec {
            vector: self
                .vector
                .iter()
                .zip(&o.vector)
                .map(|(a, b)| a.plus(b))
                .collect(),
            covector: self
                .covector
                .iter()
                .zip(&o.covector)
                .map(|(a, b)| a.plus(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &PVec<T>) -> Self {
        PVec {
            vector: self
                .vector
                .iter()
                .zip(&o.vector)
                .map(|(a, b)| a.minus(b))
                .collect(),
            covector: self
                .covector
                .iter()
                .zip(&o.covector)
                .map(|(a, b)| a.minus(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        PVec {
            vector: self.vector.iter().map(|a| a.times(c)).collect(),
            covector: self.covector.iter().map(|a| a.times(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vector
            .iter()
            .chain(&self.covector)
            .all(Scalar::is_zero_elem)
    }

    /// Vector slots followed by covector slots.
    pub fn stacked(&self) -> Vec<T> {
        self.vector.iter().chain(&self.covector).cloned().collect()
    }

    pub fn from_stacked(v: &[T]) -> Self {
        let n = v.len() / 2;
        PVec {
            vector: v[..n].to_vec(),
            covector: v[n..].to_vec(),
        }
    }
}

impl PVec<RF> {
    pub fn evaluate_at(&self, p: &[Q]) -> Result<PVec<Q>> {
        Ok(PVec {
            vector: self
                .vector
                .iter()
                .map(|f| f.evaluate_at(p))
                .collect::<std::result::Result<_, _>>()?,
            covector: self
                .covector
                .iter()
                .map(|f| f.evaluate_at(p))
                .collect::<std::result::Result<_, _>>()?,
        })
    }
}

impl fmt::Display for PVec<RF> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vector.iter().map(|c| c.to_string()).collect();
        let a: Vec<String> = self.covector.iter().map(|c| c.to_string()).collect();
        write!(f, "([{}], [{}])", v.join(", "), a.join(", "))
    }
}

impl fmt::Display for PVec<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vector.iter().map(fmt_q).collect();
        let a: Vec<String> = self.covector.iter().map(fmt_q).collect();
        write!(f, "([{}], [{}])", v.join(", "), a.join(", "))
    }
}

/// Section `(X, α)` of the Pontryagin bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct PSection {
    pub vector: VectorField,
    pub oneform: KForm,
}

impl PSection {
    pub fn new(vector: VectorField, oneform: KForm) -> Result<Self> {
        vector.chart.expect(&oneform.chart)?;
        if oneform.degree() != 1 {
            return Err(Error::Schema(format!(
                "expected a 1-form, got degree {}",
                oneform.degree()
            )));
        }
        Ok(PSection { vector, oneform })
    }

    pub fn parse<S: AsRef<str>>(chart: &Chart, vector: &[S], oneform: &[S]) -> Result<Self> {
        Self::new(
            VectorField::parse(chart, vector)?,
            KForm::parse_one_form(chart, oneform)?,
        )
    }

    pub fn from_columns(chart: &Chart, p: PVec<RF>) -> Result<Self> {
        Self::new(
            VectorField::new(chart, p.vector)?,
            KForm::one_form(chart, p.covector)?,
        )
    }

    pub fn zero(chart: &Chart) -> Self {
        PSection {
            vector: VectorField::zero(chart),
            oneform: KForm::zero(chart, 1).expect("degree 1"),
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.vector.chart
    }

    pub fn columns(&self) -> PVec<RF> {
        PVec {
            vector: self.vector.components.clone(),
            covector: self.oneform.components().to_vec(),
        }
    }

    pub fn add(&self, o: &PSection) -> Result<Self> {
        Ok(PSection {
            vector: self.vector.add(&o.vector),
            oneform: self.oneform.add(&o.oneform)?,
        })
    }

    pub fn sub(&self, o: &PSection) -> Result<Self> {
        Ok(PSection {
            vector: self.vector.sub(&o.vector),
            oneform: self.oneform.sub(&o.oneform)?,
        })
    }

    pub fn scale(&self, f: &RF) -> Self {
        PSection {
            vector: self.vector.scale(f),
            oneform: self.oneform.scale(f),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vector.is_zero() && self.oneform.is_zero()
    }

    pub fn evaluate_at(&self, p: &[Q]) -> Result<PVec<Q>> {
        self.columns().evaluate_at(p)
    }
}

impl fmt::Display for PSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.columns().fmt(f)
    }
}

pub fn canonical_pairing(a: &PSection, b: &PSection) -> Result<RF> {
    a.chart().expect(b.chart())?;
    Ok(a.columns().pairing(&b.columns()))
}

/// `([X,Y], £_X β − ι_Y dα)`.
pub fn dorfman_bracket(a: &PSection, b: &PSection) -> Result<PSection> {
    a.chart().expect(b.chart())?;
    let vector = lie_bracket(&a.vector, &b.vector)?;
    let lie = lie_derivative_one_form(&a.vector, &b.oneform)?;
    let contr = interior_product(&b.vector, &exterior_derivative(&a.oneform)?)?;
    Ok(PSection {
        vector,
        oneform: lie.sub(&contr)?,
    })
}

/// Skew-symmetric Courant bracket: Dorfman minus `½ d⟨a,b⟩`.
pub fn courant_bracket_skew(a: &PSection, b: &PSection) -> Result<PSection> {
    let dorf = dorfman_bracket(a, b)?;
    let half = canonical_pairing(a, b)?.scale(&Q::new(1.into(), 2.into()));
    let corr = differential(a.chart(), &half);
    Ok(PSection {
        vector: dorf.vector,
        oneform: dorf.oneform.sub(&corr)?,
    })
}

/// Evaluates a list of column sections into a `2n × k` matrix at a point.
pub fn frame_matrix_at(columns: &[PVec<RF>], n: usize, p: &[Q]) -> Result<Matrix<Q>> {
    let cols = columns
        .iter()
        .map(|c| Ok(c.evaluate_at(p)?.stacked()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_cols(cols, 2 * n, &Q::from_integer(0.into())))
}

/// Generating family of `n` sections presenting an (almost) Dirac structure.
#[derive(Clone, Debug)]
pub struct DiracFrame {
    pub chart: Chart,
    pub sections: Vec<PSection>,
    pub label: String,
}

impl DiracFrame {
    pub fn new(chart: &Chart, sections: Vec<PSection>, label: &str) -> Result<Self> {
        for s in &sections {
            chart.expect(s.chart())?;
        }
        Ok(DiracFrame {
            chart: chart.clone(),
            sections,
            label: label.to_string(),
        })
    }

    pub fn columns(&self) -> Vec<PVec<RF>> {
        self.sections.iter().map(PSection::columns).collect()
    }

    pub fn matrix_at(&self, p: &[Q]) -> Result<Matrix<Q>> {
        frame_matrix_at(&self.columns(), self.chart.dim(), p)
    }

    fn full_rank_matrix_at(&self, p: &PointP) -> Result<Matrix<Q>> {
        let m = self.matrix_at(&p.coords)?;
        if rank(&m) < self.chart.dim() {
            return Err(Error::RankDeficientAtPoint(p.to_string()));
        }
        Ok(m)
    }

    /// First pair of sections whose pairing is not identically zero.
    pub fn isotropy_defect(&self) -> Result<Option<(usize, usize, RF)>> {
        for i in 0..self.sections.len() {
            for j in i..self.sections.len() {
                let v = canonical_pairing(&self.sections[i], &self.sections[j])?;
                if !v.is_zero() {
                    return Ok(Some((i, j, v)));
                }
            }
        }
        Ok(None)
    }
}

pub fn check_lagrangian(frame: &DiracFrame, witness: &PointP) -> Result<Report> {
    let mut r = Report::new("lagrangian");
    match frame.isotropy_defect()? {
        None => {
            r.pass("isotropic");
        }
        Some((i, j, v)) => {
            r.fail("isotropic", format!("<e{i}, e{j}> = {v}"));
        }
    }
    let n = frame.chart.dim();
    let rk = rank(&frame.matrix_at(&witness.coords)?);
    r.record("rank", rk == n && frame.sections.len() == n, || {
        format!(
            "rank {rk} of {} sections at {witness}, expected {n}",
            frame.sections.len()
        )
    });
    Ok(r)
}

pub fn membership_at(frame: &DiracFrame, p: &PointP, candidate: &PVec<Q>) -> Result<bool> {
    let m = frame.full_rank_matrix_at(p)?;
    let c = candidate.stacked();
    for j in 0..m.cols() {
        let col = PVec::from_stacked(&m.col(j));
        if !col.pairing(&PVec::from_stacked(&c)).is_zero_elem() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Table `T_ijk = ⟨[e_i, e_j], e_k⟩` and whether it vanishes identically.
#[derive(Clone, Debug)]
pub struct CourantTensor {
    pub entries: Vec<Vec<Vec<RF>>>,
    pub closed: bool,
}

impl CourantTensor {
    pub fn first_nonzero(&self) -> Option<(usize, usize, usize, &RF)> {
        for (i, a) in self.entries.iter().enumerate() {
            for (j, b) in a.iter().enumerate() {
                for (k, v) in b.iter().enumerate() {
                    if !v.is_zero() {
                        return Some((i, j, k, v));
                    }
                }
            }
        }
        None
    }
}

pub fn courant_tensor(frame: &DiracFrame) -> Result<CourantTensor> {
    if let Some((i, j, v)) = frame.isotropy_defect()? {
        return Err(Error::NotLagrangian(format!("<e{i}, e{j}> = {v}")));
    }
    let n = frame.sections.len();
    let cols = frame.columns();
    let mut entries = Vec::with_capacity(n);
    let mut closed = true;
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let b = dorfman_bracket(&frame.sections[i], &frame.sections[j])?.columns();
            let line: Vec<RF> = cols.iter().map(|c| b.pairing(c)).collect();
            closed &= line.iter().all(RF::is_zero);
            row.push(line);
        }
        entries.push(row);
    }
    Ok(CourantTensor { entries, closed })
}

/// Bivector stored over increasing index pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct Bivector {
    pub chart: Chart,
    coeffs: KForm,
}

impl Bivector {
    pub fn from_entries(chart: &Chart, entries: Vec<((usize, usize), RF)>) -> Result<Self> {
        let e = entries
            .into_iter()
            .map(|((i, j), c)| (vec![i, j], c))
            .collect();
        Ok(Bivector {
            chart: chart.clone(),
            coeffs: KForm::from_entries(chart, 2, e)?,
        })
    }

    pub fn zero(chart: &Chart) -> Self {
        Bivector {
            chart: chart.clone(),
            coeffs: KForm::zero(chart, 2).expect("degree 2"),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> RF {
        self.coeffs.get(&[i, j])
    }

    /// `π^♯(α) = π(α, ·)`.
    pub fn sharp(&self, alpha: &[RF]) -> Vec<RF> {
        let n = self.chart.dim();
        (0..n)
            .map(|j| {
                let mut acc = self.chart.zero();
                for (i, a) in alpha.iter().enumerate() {
                    if !a.is_zero() {
                        acc = acc + a * &self.get(i, j);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &RF)> {
        self.coeffs.coefficients()
    }
}

pub fn from_bivector(pi: &Bivector) -> DiracFrame {
    let c = &pi.chart;
    let sections = (0..c.dim())
        .map(|i| {
            let mut alpha = c.zeros(c.dim());
            alpha[i] = c.one();
            let v = pi.sharp(&alpha);
            PSection::from_columns(c, PVec::new(v, alpha)).expect("dimensions agree")
        })
        .collect();
    DiracFrame {
        chart: c.clone(),
        sections,
        label: "graph of bivector".into(),
    }
}

pub fn from_two_form(omega: &KForm) -> Result<DiracFrame> {
    let c = &omega.chart;
    if omega.degree() != 2 {
        return Err(Error::Schema(format!(
            "expected a 2-form, got degree {}",
            omega.degree()
        )));
    }
    let sections = (0..c.dim())
        .map(|i| {
            let x = VectorField::coordinate(c, i);
            let a = interior_product(&x, omega)?;
            PSection::new(x, a)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DiracFrame {
        chart: c.clone(),
        sections,
        label: "graph of 2-form".into(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharacteristicRanks {
    /// `D ∩ TM`
    pub g0: usize,
    /// projection to `TM`
    pub g1: usize,
    /// `D ∩ T*M`
    pub p0: usize,
    /// projection to `T*M`
    pub p1: usize,
}

pub fn characteristic_ranks_at(frame: &DiracFrame, p: &PointP) -> Result<CharacteristicRanks> {
    let n = frame.chart.dim();
    let m = frame.full_rank_matrix_at(p)?;
    let zero = Q::from_integer(0.into());
    let block = |off: usize| {
        let rows = (0..n).map(|i| m.row(off + i)).collect();
        Matrix::from_rows(rows, m.cols(), &zero)
    };
    let g1 = rank(&block(0));
    let p1 = rank(&block(n));
    Ok(CharacteristicRanks {
        g0: n - p1,
        g1,
        p0: n - g1,
        p1,
    })
}

/// Courant algebroid presented by an element type with exact symbolic operations.
pub trait CourantAlgebroid {
    type Elem: Clone;
    fn base(&self) -> &Chart;
    fn pairing(&self, a: &Self::Elem, b: &Self::Elem) -> Result<RF>;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn anchor(&self, a: &Self::Elem) -> Result<VectorField>;
    fn d_operator(&self, f: &RF) -> Result<Self::Elem>;
    /// `Σ f_i e_i`.
    fn combine(&self, terms: &[(RF, &Self::Elem)]) -> Result<Self::Elem>;
    /// Zero test in the algebroid (modulo whatever quotient presents it).
    fn vanishes(&self, a: &Self::Elem) -> Result<bool>;
    fn describe(&self, a: &Self::Elem) -> String;
}

/// Checks the five Courant axioms, and the defining property of `𝒟`, on the given elements and functions.
pub fn check_courant_axioms<C: CourantAlgebroid>(
    alg: &C,
    elems: &[C::Elem],
    functions: &[RF],
) -> Result<Report> {
    let mut r = Report::new("courant-axioms");
    let base = alg.base();
    let one = base.one();
    let third = Q::new(1.into(), 3.into());
    let n = elems.len();

    let mut brackets = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            brackets[i][j] = Some(alg.bracket(&elems[i], &elems[j])?);
        }
    }
    let br = |i: usize, j: usize| brackets[i][j].clone().expect("filled");

    // 1: Jacobiator equals 𝒟 of one third of the cyclic pairing sum
    let mut bad = None;
    'jac: for tri in combinations(n, 3) {
        let (i, j, k) = (tri[0], tri[1], tri[2]);
        let lhs = [
            alg.bracket(&br(i, j), &elems[k])?,
            alg.bracket(&br(j, k), &elems[i])?,
            alg.bracket(&br(k, i), &elems[j])?,
        ];
        let t = alg.pairing(&br(i, j), &elems[k])?
            + alg.pairing(&br(j, k), &elems[i])?
            + alg.pairing(&br(k, i), &elems[j])?;
        let rhs = alg.d_operator(&t.scale(&third))?;
        let minus = -one.clone();
        let diff = alg.combine(&[
            (one.clone(), &lhs[0]),
            (one.clone(), &lhs[1]),
            (one.clone(), &lhs[2]),
            (minus, &rhs),
        ])?;
        if !alg.vanishes(&diff)? {
            bad = Some(format!("e{i}, e{j}, e{k}: defect {}", alg.describe(&diff)));
            break 'jac;
        }
    }
    r.record("axiom 1 (Jacobi anomaly)", bad.is_none(), || {
        bad.clone().unwrap_or_default()
    });

    // 2: anchor is a bracket morphism
    let mut bad = None;
    'anc: for i in 0..n {
        for j in 0..n {
            let lhs = alg.anchor(&br(i, j))?;
            let rhs = lie_bracket(&alg.anchor(&elems[i])?, &alg.anchor(&elems[j])?)?;
            if !lhs.sub(&rhs).is_zero() {
                bad = Some(format!("e{i}, e{j}"));
                break 'anc;
            }
        }
    }
    r.record("axiom 2 (anchor morphism)", bad.is_none(), || {
        bad.clone().unwrap_or_default()
    });

    // 3: Leibniz rule
    let mut bad = None;
    'leib: for f in functions {
        let df = alg.d_operator(f)?;
        for i in 0..n {
            let rho = alg.anchor(&elems[i])?;
            for j in 0..n {
                let fe = alg.combine(&[(f.clone(), &elems[j])])?;
                let lhs = alg.bracket(&elems[i], &fe)?;
                let pair = alg.pairing(&elems[i], &elems[j])?;
                let diff = alg.combine(&[
                    (one.clone(), &lhs),
                    (-f.clone(), &br(i, j)),
                    (-rho.apply(f), &elems[j]),
                    (pair, &df),
                ])?;
                if !alg.vanishes(&diff)? {
                    bad = Some(format!("e{i}, f*e{j} with f = {f}"));
                    break 'leib;
                }
            }
        }
    }
    r.record("axiom 3 (Leibniz)", bad.is_none(), || {
        bad.clone().unwrap_or_default()
    });

    // 4: anchor kills 𝒟, equivalently ⟨𝒟f, 𝒟g⟩ = 0
    let mut bad = None;
    'dd: for f in functions {
        let df = alg.d_operator(f)?;
        if !alg.anchor(&df)?.is_zero() {
            bad = Some(format!("anchor(D f) != 0 for f = {f}"));
            break;
        }
        for g in functions {
            let dg = alg.d_operator(g)?;
            if !alg.pairing(&df, &dg)?.is_zero() {
                bad = Some(format!("<D f, D g> != 0 for f = {f}, g = {g}"));
                break 'dd;
            }
        }
    }
    r.record("axiom 4 (anchor of D)", bad.is_none(), || {
        bad.clone().unwrap_or_default()
    });

    // 5: metric compatibility
    let mut bad = None;
    let mut d_pair = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            d_pair[i][j] = Some(alg.d_operator(&alg.pairing(&elems[i], &elems[j])?)?);
        }
    }
    'met: for i in 0..n {
        let rho = alg.anchor(&elems[i])?;
        for j in 0..n {
            for k in j..n {
                let lhs = rho.apply(&alg.pairing(&elems[j], &elems[k])?);
                let a = alg.combine(&[
                    (one.clone(), &br(i, j)),
                    (one.clone(), d_pair[i][j].as_ref().expect("filled")),
                ])?;
                let b = alg.combine(&[
                    (one.clone(), &br(i, k)),
                    (one.clone(), d_pair[i][k].as_ref().expect("filled")),
                ])?;
                let rhs = alg.pairing(&a, &elems[k])? + alg.pairing(&elems[j], &b)?;
                if !(lhs - rhs).is_zero() {
                    bad = Some(format!("e{i}; e{j}, e{k}"));
                    break 'met;
                }
            }
        }
    }
    r.record("axiom 5 (metric compatibility)", bad.is_none(), || {
        bad.clone().unwrap_or_default()
    });

    // defining property ⟨𝒟f, e⟩ = ½ ρ(e) f
    let half = Q::new(1.into(), 2.into());
    let mut bad = None;
    'def: for f in functions {
        let df = alg.d_operator(f)?;
        for (i, e) in elems.iter().enumerate() {
            let lhs = alg.pairing(&df, e)?;
            let rhs = alg.anchor(e)?.apply(f).scale(&half);
            if !(lhs - rhs).is_zero() {
                bad = Some(format!("e{i}, f = {f}"));
                break 'def;
            }
        }
    }
    r.record("D is half the dual of the anchor", bad.is_none(), || {
        bad.clone().unwrap_or_default()
    });
    Ok(r)
}

/// `TM ⊕ T*M` with the skew Courant bracket.
#[derive(Clone, Debug)]
pub struct Pontryagin {
    pub chart: Chart,
}

impl CourantAlgebroid for Pontryagin {
    type Elem = PSection;

    fn base(&self) -> &Chart {
        &self.chart
    }

    fn pairing(&self, a: &PSection, b: &PSection) -> Result<RF> {
        canonical_pairing(a, b)
    }

    fn bracket(&self, a: &PSection, b: &PSection) -> Result<PSection> {
        courant_bracket_skew(a, b)
    }

    fn anchor(&self, a: &PSection) -> Result<VectorField> {
        Ok(a.vector.clone())
    }

    fn d_operator(&self, f: &RF) -> Result<PSection> {
        let half = Q::new(1.into(), 2.into());
        Ok(PSection {
            vector: VectorField::zero(&self.chart),
            oneform: differential(&self.chart, &f.scale(&half)),
        })
    }

    fn combine(&self, terms: &[(RF, &PSection)]) -> Result<PSection> {
        let mut acc = PSection::zero(&self.chart);
        for (f, e) in terms {
            acc = acc.add(&e.scale(f))?;
        }
        Ok(acc)
    }

    fn vanishes(&self, a: &PSection) -> Result<bool> {
        Ok(a.is_zero())
    }

    fn describe(&self, a: &PSection) -> String {
        a.to_string()
    }
}
