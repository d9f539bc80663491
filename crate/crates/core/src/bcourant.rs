//! The quotient `𝔅(D_G) = (𝔄 ⊕ ker 𝕋t|_P) / Iˢ`, its Courant structure, the three explicit
//! isomorphisms and the action of bisections.

use crate::dirac::{
    check_courant_axioms, courant_bracket_skew, courant_tensor, Bivector, CourantAlgebroid, DiracFrame, PSection,
    PVec, Pontryagin,
};
use crate::error::{Error, Result};
use crate::expr::Q;
use crate::geometry::{differential, eval_matrix, Chart, KForm, PointP, SmoothMap, VectorField, RF};
use crate::groupoid::{frame_at, right_translation, Bisection, GroupoidDef};
use crate::infinitesimal::{
    invariant_extension, orthogonal_to_all, restrict_to_units, span_contains, stack_matrix, target_units,
    Infinitesimal, Side, UnitColumn,
};
use crate::linalg::{independent_subset, nullspace, rank, solve, Matrix};
use crate::report::{Report, Status};
use crate::sampling::Sampler;

fn zq() -> Q {
    Q::from_integer(0.into())
}

/// Presentation of `𝔅(D_G)` by representatives in `𝔄 ⊕ ker 𝕋t|_P`.
#[derive(Clone, Debug)]
pub struct BFrame {
    pub inf: Infinitesimal,
    /// Frame of `ker 𝕋t|_P = AG ⊕ (Ts)^*T*P`.
    pub ker_t: Vec<UnitColumn>,
    /// Complement of `Iᵗ` in `ker 𝕋t|_P`, chosen greedily from `ker_t`.
    pub complement: Vec<UnitColumn>,
    /// `units` followed by `complement`.
    pub reps: Vec<UnitColumn>,
    pub pairing_matrix: Matrix<RF>,
    /// Courant-tensor verdict on the input frame.
    pub closed: bool,
    pub not_closed_witness: Option<String>,
}

pub fn build_b(def: &GroupoidDef, frame: &DiracFrame) -> Result<BFrame> {
    let inf = Infinitesimal::new(def, frame)?;
    let (n, m) = (def.n(), def.m());
    let pz = def.base.zero();
    let mut ker_t: Vec<UnitColumn> = nullspace(&def.calc.jt_units)
        .into_iter()
        .map(|v| PVec::new(v, def.base.zeros(n)))
        .collect();
    ker_t.extend((0..m).map(|i| PVec::new(def.base.zeros(n), def.calc.js_units.row(i))));
    let mut pool: Vec<Vec<RF>> = inf.t_core.iter().map(|c| c.stacked()).collect();
    pool.extend(ker_t.iter().map(|c| c.stacked()));
    let offset = inf.t_core.len();
    let complement: Vec<UnitColumn> = independent_subset(&pool, &pz)
        .into_iter()
        .filter(|&i| i >= offset)
        .map(|i| ker_t[i - offset].clone())
        .collect();
    let mut reps = inf.units.clone();
    reps.extend(complement.iter().cloned());
    if reps.len() != 2 * inf.units.len() {
        return Err(Error::RankDrop(format!(
            "{} representatives for a quotient of rank {}",
            reps.len(),
            2 * inf.units.len()
        )));
    }
    let k = reps.len();
    let mut pm = Matrix::zeros(k, k, &pz);
    for i in 0..k {
        for j in 0..k {
            pm.set(i, j, reps[i].pairing(&reps[j]));
        }
    }
    let at = eval_matrix(&pm, &inf.witness.coords)?;
    if rank(&at) < k {
        return Err(Error::RankDrop(format!("induced pairing degenerate at {}", inf.witness)));
    }
    let tensor = courant_tensor(frame)?;
    let not_closed_witness = tensor
        .first_nonzero()
        .map(|(i, j, l, v)| format!("Courant tensor T(e{i}, e{j}, e{l}) = {v}"));
    Ok(BFrame {
        inf,
        ker_t,
        complement,
        reps,
        pairing_matrix: pm,
        closed: tensor.closed,
        not_closed_witness,
    })
}

impl BFrame {
    pub fn def(&self) -> &GroupoidDef {
        &self.inf.def
    }

    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    fn pz(&self) -> RF {
        self.inf.def.base.zero()
    }

    /// Splits `x ∈ 𝔄 ⊕ ker 𝕋t|_P` as `(𝕋t x, x − 𝕋t x)`.
    pub fn decompose(&self, x: &UnitColumn) -> Result<(UnitColumn, UnitColumn)> {
        let a = target_units(self.def(), x);
        if !self.inf.in_units(&a) {
            return Err(Error::WrongKernel(format!("{x} is not in 𝔄 ⊕ ker 𝕋t")));
        }
        let sigma = x.sub(&a);
        Ok((a, sigma))
    }

    /// `ξ + σ^l` on `G`.
    pub fn lift(&self, x: &UnitColumn) -> Result<PVec<RF>> {
        let (a, sigma) = self.decompose(x)?;
        Ok(self.inf.star_section(&a)?.add(&invariant_extension(self.def(), &sigma, Side::Left)?))
    }

    fn lift_perturbed(&self, x: &UnitColumn, core_index: usize) -> Result<PVec<RF>> {
        let (a, sigma) = self.decompose(x)?;
        Ok(self
            .inf
            .perturbed_star(&a, core_index)?
            .add(&invariant_extension(self.def(), &sigma, Side::Left)?))
    }

    fn skew_restricted(&self, a: &PVec<RF>, b: &PVec<RF>) -> Result<UnitColumn> {
        let total = &self.def().total;
        let br = courant_bracket_skew(
            &PSection::from_columns(total, a.clone())?,
            &PSection::from_columns(total, b.clone())?,
        )?;
        restrict_to_units(self.def(), &br.columns())
    }

    /// Bracket computed without the closedness gate.
    pub fn raw_bracket(&self, x: &UnitColumn, y: &UnitColumn) -> Result<UnitColumn> {
        self.skew_restricted(&self.lift(x)?, &self.lift(y)?)
    }

    /// `[ξ + σ^l, η + τ^l]|_P + Iˢ`; only defined for closed frames.
    pub fn b_bracket(&self, x: &UnitColumn, y: &UnitColumn) -> Result<UnitColumn> {
        if !self.closed {
            let detail = self.well_definedness_defect()?.unwrap_or_else(|| {
                format!(
                    "bracket not available: frame is not closed ({})",
                    self.not_closed_witness.clone().unwrap_or_default()
                )
            });
            return Err(Error::WellDefinednessViolation(detail));
        }
        let b = self.raw_bracket(x, y)?;
        self.decompose(&b)
            .map_err(|_| Error::WellDefinednessViolation(format!("bracket {b} leaves 𝔄 ⊕ ker 𝕋t")))?;
        Ok(b)
    }

    /// First failure of independence from the representative, or `None`.
    pub fn well_definedness_defect(&self) -> Result<Option<String>> {
        let core = &self.inf.s_core;
        for (i, iota) in core.iter().enumerate() {
            for (j, r) in self.reps.iter().enumerate() {
                let b = self.raw_bracket(iota, r)?;
                if !self.in_core(&b) {
                    return Ok(Some(format!("[i{i}, r{j}] = {b} is not in Is")));
                }
            }
        }
        for (i, _) in core.iter().enumerate() {
            for (j, x) in self.reps.iter().enumerate() {
                for (l, y) in self.reps.iter().enumerate().skip(j + 1) {
                    let a = self.skew_restricted(&self.lift_perturbed(x, i)?, &self.lift(y)?)?;
                    let b = self.raw_bracket(x, y)?;
                    if !self.in_core(&a.sub(&b)) {
                        return Ok(Some(format!("[r{j}, r{l}] changes with the star section (perturbation {i})")));
                    }
                }
            }
        }
        Ok(None)
    }

    /// `x ∈ Iˢ`, decided by pairing against `𝔄 ⊕ ker 𝕋t|_P = (Iˢ)^⊥`.
    pub fn in_core(&self, x: &UnitColumn) -> bool {
        orthogonal_to_all(&self.inf.units, x).is_none() && orthogonal_to_all(&self.ker_t, x).is_none()
    }

    pub fn equal_mod_core(&self, x: &UnitColumn, y: &UnitColumn) -> bool {
        self.in_core(&x.sub(y))
    }

    /// Pointwise coset equality at a base point.
    pub fn equal_mod_core_at(&self, p: &PointP, x: &PVec<Q>, y: &PVec<Q>) -> Result<bool> {
        let d = x.sub(y);
        for g in self.inf.units.iter().chain(&self.ker_t) {
            if g.evaluate_at(&p.coords)?.pairing(&d) != zq() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `𝖻(v, α) = Ts v`.
    pub fn b_anchor(&self, x: &UnitColumn) -> Vec<RF> {
        self.def().calc.js_units.apply(&x.vector)
    }

    /// `𝒟f = ½(0, s^* df)`.
    pub fn b_d(&self, f: &RF) -> UnitColumn {
        let half = Q::new(1.into(), 2.into());
        let df = differential(&self.def().base, &f.scale(&half));
        let n = self.def().n();
        PVec::new(self.def().base.zeros(n), self.def().calc.js_units.apply_transpose(df.components()))
    }

    /// Bundle-level checks: counts, descent of the pairing, nondegeneracy.
    pub fn report(&self) -> Result<Report> {
        let mut r = Report::new("build-b");
        let (m, units, core) = (self.def().m(), self.inf.units.len(), self.inf.s_core.len());
        r.note(format!(
            "rank 𝔄 = {units}, rank ker𝕋t = {}, rank Is = {core}, rank 𝔅 = {}",
            self.ker_t.len(),
            self.rank()
        ));
        r.record(
            "representatives + rank Is = rank 𝔄 + rank ker𝕋t",
            self.rank() + core == units + self.ker_t.len(),
            || format!("{} + {core} != {units} + {}", self.rank(), self.ker_t.len()),
        );
        let bad = self
            .inf
            .s_core
            .iter()
            .enumerate()
            .find_map(|(i, c)| (!self.in_core(c)).then_some(i));
        r.record("pairing descends: Is ⊥ 𝔄 ⊕ ker𝕋t", bad.is_none(), || format!("core generator {}", bad.unwrap_or(0)));
        r.pass("induced pairing nondegenerate at witness").witnesses.push(self.inf.witness.to_string());
        r.note(format!(
            "rank 𝔅 = {}, 2 dim P = {}{}",
            self.rank(),
            2 * m,
            if self.rank() == 2 * m { "" } else { " (differs: the units algebroid is not of rank dim P)" }
        ));
        r.note(format!("Iᵗ complement: {} generators of ker𝕋t", self.complement.len()));
        Ok(r)
    }
}

impl CourantAlgebroid for BFrame {
    type Elem = UnitColumn;

    fn base(&self) -> &Chart {
        &self.inf.def.base
    }

    fn pairing(&self, a: &UnitColumn, b: &UnitColumn) -> Result<RF> {
        Ok(a.pairing(b))
    }

    fn bracket(&self, a: &UnitColumn, b: &UnitColumn) -> Result<UnitColumn> {
        self.b_bracket(a, b)
    }

    fn anchor(&self, a: &UnitColumn) -> Result<VectorField> {
        Ok(VectorField::new(&self.inf.def.base, self.b_anchor(a))?)
    }

    fn d_operator(&self, f: &RF) -> Result<UnitColumn> {
        Ok(self.b_d(f))
    }

    fn combine(&self, terms: &[(RF, &UnitColumn)]) -> Result<UnitColumn> {
        let mut acc = PVec::zero(self.def().n(), &self.pz());
        for (f, e) in terms {
            acc = acc.add(&e.scale(f));
        }
        Ok(acc)
    }

    fn vanishes(&self, a: &UnitColumn) -> Result<bool> {
        Ok(self.in_core(a))
    }

    fn describe(&self, a: &UnitColumn) -> String {
        a.to_string()
    }
}

/// The five axioms on the representatives and sampled functions; gated on closedness.
pub fn check_b_axioms(b: &BFrame, functions: &[RF]) -> Result<Report> {
    if !b.closed {
        let mut r = Report::new("courant-axioms");
        let w = b.not_closed_witness.clone().unwrap_or_default();
        r.not_applicable("input frame is closed", w);
        match b.b_bracket(&b.reps[0], &b.reps[b.reps.len() - 1]) {
            Err(Error::WellDefinednessViolation(w)) => {
                r.fail("bracket on 𝔅 is well defined", w);
            }
            Err(e) => return Err(e),
            Ok(_) => {
                r.pass("bracket on 𝔅 is well defined");
            }
        }
        return Ok(r);
    }
    let mut r = check_courant_axioms(b, &b.reps, functions)?;
    match b.well_definedness_defect()? {
        None => r.pass("bracket independent of representatives"),
        Some(w) => r.fail("bracket independent of representatives", w),
    };
    Ok(r)
}

/// Sampled test functions on the base.
pub fn test_functions(chart: &Chart, seed: u64) -> Vec<RF> {
    let mut s = Sampler::new(seed);
    let mut out = vec![s.polynomial(chart, 1), s.polynomial(chart, 2)];
    if chart.dim() == 0 {
        out.truncate(1);
    }
    out
}

fn pontryagin_basis(chart: &Chart) -> Vec<PSection> {
    let n = chart.dim();
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut v = chart.zeros(n);
        v[i] = chart.one();
        out.push(PSection::from_columns(chart, PVec::new(v, chart.zeros(n))).expect("dimensions"));
    }
    for i in 0..n {
        let mut a = chart.zeros(n);
        a[i] = chart.one();
        out.push(PSection::from_columns(chart, PVec::new(chart.zeros(n), a)).expect("dimensions"));
    }
    out
}

/// Common checks for an explicit isomorphism `𝖯_P → 𝔅` with a left inverse `𝔅 → 𝖯_P`.
fn check_transport(
    b: &BFrame,
    r: &mut Report,
    forward: &dyn Fn(&PSection) -> Result<UnitColumn>,
    backward: &dyn Fn(&UnitColumn) -> Result<PSection>,
    functions: &[RF],
) -> Result<()> {
    let base = &b.def().base;
    let mut elems = pontryagin_basis(base);
    if let Some(f) = functions.iter().find(|f| f.constant_value().is_none()) {
        let extra: Vec<PSection> = elems.iter().map(|e| e.scale(f)).collect();
        elems.extend(extra);
    }
    let images = elems.iter().map(forward).collect::<Result<Vec<_>>>()?;
    let bad = images.iter().position(|x| b.decompose(x).is_err());
    r.record("image lies in 𝔄 ⊕ ker𝕋t", bad.is_none(), || format!("basis element {}", bad.unwrap_or(0)));
    let back = elems.iter().zip(&images).position(|(e, x)| backward(x).map(|y| y != *e).unwrap_or(true));
    r.record("left inverse on 𝖯_P", back.is_none(), || format!("basis element {}", back.unwrap_or(0)));
    let bad = b
        .reps
        .iter()
        .position(|x| backward(x).and_then(|y| forward(&y)).map(|z| !b.equal_mod_core(&z, x)).unwrap_or(true));
    r.record("right inverse on 𝔅 (mod Is)", bad.is_none(), || format!("representative {}", bad.unwrap_or(0)));
    let k = 2 * base.dim();
    let img_mat = stack_matrix(&images[..k], 2 * b.def().n(), &b.def().base.zero());
    let at = eval_matrix(&img_mat, &b.inf.witness.coords)?;
    r.record("bijective on bases", rank(&at) == k && k == b.rank(), || {
        format!("image rank {} vs rank 𝔅 {}", rank(&at), b.rank())
    });
    let pont = Pontryagin { chart: base.clone() };
    let mut bad_pair = None;
    let mut bad_anchor = None;
    let mut bad_bracket = None;
    for (i, ei) in elems.iter().enumerate() {
        let a = pont.anchor(ei)?;
        if VectorField::new(base, b.b_anchor(&images[i]))? != a {
            bad_anchor.get_or_insert(format!("element {i}"));
        }
        for (j, ej) in elems.iter().enumerate() {
            if pont.pairing(ei, ej)? != images[i].pairing(&images[j]) {
                bad_pair.get_or_insert(format!("elements {i}, {j}"));
            }
            if j <= i || bad_bracket.is_some() {
                continue;
            }
            let lhs = b.b_bracket(&images[i], &images[j])?;
            let rhs = forward(&pont.bracket(ei, ej)?)?;
            if !b.equal_mod_core(&lhs, &rhs) {
                bad_bracket = Some(format!("[{ei}, {ej}]: 𝔅 gives {lhs}, standard gives {rhs}"));
            }
        }
    }
    r.record("pairing preserved", bad_pair.is_none(), || bad_pair.clone().unwrap_or_default());
    r.record("anchor preserved", bad_anchor.is_none(), || bad_anchor.clone().unwrap_or_default());
    r.record("bracket transported to the standard Courant bracket", bad_bracket.is_none(), || {
        bad_bracket.clone().unwrap_or_default()
    });
    Ok(())
}

fn span_equal(a: &[PVec<RF>], b: &[PVec<RF>], zero: &RF) -> bool {
    a.iter().all(|x| span_contains(b, x, zero)) && b.iter().all(|x| span_contains(a, x, zero))
}

/// `Π(v, w, α, β) = (w, β)` for the pair groupoid of the base.
pub fn pair_projection(b: &BFrame, x: &UnitColumn) -> Result<PSection> {
    let k = b.def().m();
    if b.def().n() != 2 * k {
        return Err(Error::FamilyMismatch("pair groupoid".into()));
    }
    PSection::from_columns(&b.def().base, PVec::new(x.vector[k..].to_vec(), x.covector[k..].to_vec()))
}

/// `Π⁻¹(w, β) = (0, w, 0, β)`.
pub fn pair_injection(b: &BFrame, e: &PSection) -> Result<UnitColumn> {
    let c = e.columns();
    let z = b.def().base.zeros(c.dim());
    Ok(PVec::new([z.clone(), c.vector].concat(), [z, c.covector].concat()))
}

pub fn iso_pair(b: &BFrame, functions: &[RF]) -> Result<Report> {
    let def = b.def();
    let k = def.m();
    let expected = crate::groupoid::pair_groupoid(&def.base)?;
    if def.n() != 2 * k || !def.mult.same_as(&expected.mult) || !def.src.same_as(&expected.src) {
        return Err(Error::FamilyMismatch("pair groupoid".into()));
    }
    let mut r = Report::new("iso-check pair");
    check_transport(b, &mut r, &|e| pair_injection(b, e), &|x| pair_projection(b, x), functions)?;
    Ok(r)
}

/// `ω♭` along the units, `(ι_v ω)_j = Σ_i v_i ω_ij`.
fn flat_matrix(def: &GroupoidDef, omega: &KForm) -> Result<Matrix<RF>> {
    let n = def.n();
    let mut m = Matrix::zeros(n, n, &def.total.zero());
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m.set(i, j, omega.get(&[i, j]));
            }
        }
    }
    Ok(def.unit.pull_matrix(&m.transpose())?)
}

/// `Λ(v, α) = (Ts v, β)` with `(Ts)^* β = α − ι_v ω_G`.
pub fn lambda(b: &BFrame, omega: &KForm, x: &UnitColumn) -> Result<PSection> {
    let def = b.def();
    let flat = flat_matrix(def, omega)?;
    let rhs = x.covector.iter().zip(flat.apply(&x.vector)).map(|(a, w)| a - &w).collect::<Vec<_>>();
    let sol = solve(&def.calc.js_units.transpose(), &rhs)
        .ok_or_else(|| Error::WrongKernel(format!("{x}: α − ι_v ω is not pulled back by s")))?;
    PSection::from_columns(&def.base, PVec::new(b.b_anchor(x), sol.particular))
}

/// `Λ⁻¹(v, α) = (Tε v, (Ts)^* α + ι_{Tε v} ω_G)`.
pub fn lambda_inverse(b: &BFrame, omega: &KForm, e: &PSection) -> Result<UnitColumn> {
    let def = b.def();
    let c = e.columns();
    let v = def.calc.jeps.apply(&c.vector);
    let flat = flat_matrix(def, omega)?;
    let pulled = def.calc.js_units.apply_transpose(&c.covector);
    let a = pulled.iter().zip(flat.apply(&v)).map(|(p, w)| p + &w).collect();
    Ok(PVec::new(v, a))
}

pub fn iso_presymplectic(b: &BFrame, omega: &KForm, functions: &[RF]) -> Result<Report> {
    let def = b.def();
    let graph = crate::dirac::from_two_form(omega)?;
    if !span_equal(&graph.columns(), &b.inf.frame.columns(), &def.total.zero()) {
        return Err(Error::FamilyMismatch("graph of the multiplicative 2-form".into()));
    }
    let mut r = Report::new("iso-check presymplectic");
    check_transport(b, &mut r, &|e| lambda_inverse(b, omega, e), &|x| lambda(b, omega, x), functions)?;
    Ok(r)
}

/// `Ψ(X, ξ) = (X + π^♯ξ, ξ)` with `X ∈ AG` and `ξ ∈ A*G = (TP)°`.
pub fn psi(b: &BFrame, pi: &Bivector, x: &[RF], xi: &[RF]) -> Result<UnitColumn> {
    let def = b.def();
    let n = def.n();
    let cols: Vec<Vec<RF>> = (0..n)
        .map(|j| {
            let mut e = def.total.zeros(n);
            e[j] = def.total.one();
            pi.sharp(&e)
        })
        .collect();
    let sharp = def.unit.pull_matrix(&Matrix::from_cols(cols, n, &def.total.zero()))?;
    let v = sharp.apply(xi).into_iter().zip(x).map(|(a, c)| a + c.clone()).collect();
    Ok(PVec::new(v, xi.to_vec()))
}

/// Frames of `AG = ker Tt|_P` and `A*G = (TP)°`.
pub fn algebroid_frames(def: &GroupoidDef) -> (Vec<Vec<RF>>, Vec<Vec<RF>>) {
    (nullspace(&def.calc.jt_units), nullspace(&def.calc.jeps.transpose()))
}

pub fn iso_poisson(b: &BFrame, pi: &Bivector) -> Result<Report> {
    let def = b.def();
    let n = def.n();
    let graph = crate::dirac::from_bivector(pi);
    if !span_equal(&graph.columns(), &b.inf.frame.columns(), &def.total.zero()) {
        return Err(Error::FamilyMismatch("graph of the multiplicative bivector".into()));
    }
    let mut r = Report::new("iso-check poisson");
    let pz = def.base.zero();
    let (ag, dual) = algebroid_frames(def);
    let zeros = def.base.zeros(n);
    let a_images = ag.iter().map(|x| psi(b, pi, x, &zeros)).collect::<Result<Vec<_>>>()?;
    let d_images = dual.iter().map(|xi| psi(b, pi, &zeros, xi)).collect::<Result<Vec<_>>>()?;
    let all: Vec<UnitColumn> = a_images.iter().chain(&d_images).cloned().collect();
    let bad = all.iter().position(|x| b.decompose(x).is_err());
    r.record("image lies in 𝔄 ⊕ ker𝕋t", bad.is_none(), || format!("basis element {}", bad.unwrap_or(0)));
    let k = all.len();
    let mut pm = Matrix::zeros(k, k, &pz);
    for i in 0..k {
        for j in 0..k {
            pm.set(i, j, all[i].pairing(&all[j]));
        }
    }
    let at = eval_matrix(&pm, &b.inf.witness.coords)?;
    r.record("bijective on bases", rank(&at) == k && k == b.rank(), || {
        format!("image rank {} vs rank 𝔅 {}", rank(&at), b.rank())
    });
    // ⟨Ψ(X,ξ), Ψ(Y,η)⟩ = ξ(Y) + η(X)
    let dot = |u: &[RF], v: &[RF]| u.iter().zip(v).fold(pz.clone(), |acc, (a, c)| acc + a * c);
    let mut bad = None;
    for (i, x) in ag.iter().chain(&dual).enumerate() {
        for (j, y) in ag.iter().chain(&dual).enumerate() {
            let (xv, xc) = if i < ag.len() { (x.as_slice(), &zeros[..]) } else { (&zeros[..], x.as_slice()) };
            let (yv, yc) = if j < ag.len() { (y.as_slice(), &zeros[..]) } else { (&zeros[..], y.as_slice()) };
            if all[i].pairing(&all[j]) != dot(xc, yv) + dot(yc, xv) {
                bad.get_or_insert(format!("elements {i}, {j}"));
            }
        }
    }
    r.record("pairing preserved", bad.is_none(), || bad.clone().unwrap_or_default());
    let core = &b.inf.s_core;
    for (label, images) in [("AG", &a_images), ("A*G", &d_images)] {
        let mut gens = images.clone();
        gens.extend(core.iter().cloned());
        let mut bad = None;
        'sub: for i in 0..images.len() {
            for j in (i + 1)..images.len() {
                let br = b.b_bracket(&images[i], &images[j])?;
                if !span_contains(&gens, &br, &pz) {
                    bad = Some(format!("[{i}, {j}] = {br}"));
                    break 'sub;
                }
            }
        }
        r.record(format!("Ψ({label}) is closed under the bracket"), bad.is_none(), || bad.clone().unwrap_or_default());
    }
    Ok(r)
}

/// Precomputed data of `ρ_K`.
#[derive(Clone, Debug)]
pub struct BisectionAction {
    pub bisection: Bisection,
    pub translation: SmoothMap,
    jacobian: Matrix<RF>,
}

impl BisectionAction {
    pub fn new(def: &GroupoidDef, k: &Bisection) -> Result<Self> {
        let translation = right_translation(def, k)?;
        let jacobian = translation.jacobian();
        Ok(BisectionAction {
            bisection: k.clone(),
            translation,
            jacobian,
        })
    }
}

/// Value of `ρ_K` on one element, with a flag telling whether every admissible lift agreed.
#[derive(Clone, Debug)]
pub struct ActionOutcome {
    pub point: PointP,
    pub value: PVec<Q>,
    pub lift_independent: bool,
}

/// `ρ_K(e) = R_K((v, α) ⋆ e)` with `(v, α) ∈ D(K(p)⁻¹)` and `𝕋s(v, α) = 𝕋t(e)`.
pub fn bisection_action_at(b: &BFrame, action: &BisectionAction, p: &PointP, e: &PVec<Q>) -> Result<ActionOutcome> {
    let def = b.def();
    let h = action.bisection.map.apply_at(p)?;
    let hi = def.inverse_at(&h)?;
    let ep = def.unit_at(p)?;
    let te = PVec::from_stacked(&eval_matrix(&def.calc.target_units, &p.coords)?.apply(&e.stacked()));
    let fh = frame_at(&b.inf.frame, &hi)?;
    let system = eval_matrix(&def.calc.source_sym, &hi.coords)?.mul(&fh);
    let sol = solve(&system, &te.stacked()).ok_or_else(|| Error::NoLift(format!("{e} at {p}")))?;
    let q = def.src.apply_at(&h)?;
    let landing = action.translation.apply_at(&hi)?;
    if landing != def.unit_at(&q)? {
        return Err(Error::AxiomViolation {
            identity: "R_K(K(p)⁻¹) = ε(s(K(p)))".into(),
            witness: p.to_string(),
        });
    }
    let jac = eval_matrix(&action.jacobian, &hi.coords)?;
    let transport = |coeff: &[Q]| -> Result<PVec<Q>> {
        let x = PVec::from_stacked(&fh.apply(coeff));
        let y = def.pontryagin_mult_at(&hi, &ep, &x, e)?;
        let cov = solve(&jac.transpose(), &y.covector)
            .ok_or_else(|| Error::NonInvertibleBisection(format!("R_K singular at {hi}")))?;
        Ok(PVec::new(jac.apply(&y.vector), cov.particular))
    };
    let value = transport(&sol.particular)?;
    let mut lift_independent = true;
    for k in &sol.kernel {
        let shifted: Vec<Q> = sol.particular.iter().zip(k).map(|(a, c)| a + c).collect();
        if !b.equal_mod_core_at(&q, &transport(&shifted)?, &value)? {
            lift_independent = false;
        }
    }
    Ok(ActionOutcome {
        point: q,
        value,
        lift_independent,
    })
}

/// `ρ_ε = id`, `ρ_{K⋆L} = ρ_L∘ρ_K`, lift independence and pairing preservation at sampled points.
pub fn check_bisection_action(b: &BFrame, bisections: &[Bisection], samples: usize, seed: u64) -> Result<Report> {
    let def = b.def();
    let mut r = Report::new("bisection-action");
    r.seed = Some(seed);
    let identity = BisectionAction::new(def, &Bisection::identity(def))?;
    let actions = bisections.iter().map(|k| BisectionAction::new(def, k)).collect::<Result<Vec<_>>>()?;
    let mut composites = Vec::new();
    for (i, k) in bisections.iter().enumerate() {
        for (j, l) in bisections.iter().enumerate() {
            composites.push((i, j, BisectionAction::new(def, &k.star(def, l)?)?));
        }
    }
    let mut sampler = Sampler::new(seed);
    let (mut id_bad, mut comp_bad, mut lift_bad, mut pair_bad) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for _ in 0..samples {
        let (p, ()) = sampler.point_where(&def.base, |p| {
            let reps = b.reps.iter().map(|x| x.evaluate_at(&p.coords)).collect::<Result<Vec<_>>>()?;
            for (ri, e) in reps.iter().enumerate() {
                let out = bisection_action_at(b, &identity, p, e)?;
                if !b.equal_mod_core_at(p, &out.value, e)? {
                    id_bad.push(format!("p = {p}, r{ri}: {} vs {e}", out.value));
                }
            }
            for a in &actions {
                let outs = reps
                    .iter()
                    .map(|e| bisection_action_at(b, a, p, e))
                    .collect::<Result<Vec<_>>>()?;
                for (i, oi) in outs.iter().enumerate() {
                    if !oi.lift_independent {
                        lift_bad.push(format!("K = {}, p = {p}, r{i}", a.bisection.label));
                    }
                    for (j, oj) in outs.iter().enumerate() {
                        if oi.value.pairing(&oj.value) != reps[i].pairing(&reps[j]) {
                            pair_bad.push(format!("K = {}, p = {p}, r{i}, r{j}", a.bisection.label));
                        }
                    }
                }
            }
            for (i, j, kl) in &composites {
                for (ri, e) in reps.iter().enumerate() {
                    let once = bisection_action_at(b, &actions[*i], p, e)?;
                    let twice = bisection_action_at(b, &actions[*j], &once.point, &once.value)?;
                    let direct = bisection_action_at(b, kl, p, e)?;
                    if direct.point != twice.point || !b.equal_mod_core_at(&direct.point, &direct.value, &twice.value)? {
                        comp_bad.push(format!(
                            "K = {}, L = {}, p = {p}, r{ri}: {} vs {}",
                            actions[*i].bisection.label, actions[*j].bisection.label, direct.value, twice.value
                        ));
                    }
                }
            }
            Ok(())
        })?;
        r.sample_points.push(p.to_string());
    }
    for (name, mut bad) in [
        ("ρ_ε = id", id_bad),
        ("ρ_{K⋆L} = ρ_L ∘ ρ_K", comp_bad),
        ("independent of the lift", lift_bad),
        ("pairing preserved", pair_bad),
    ] {
        if bad.is_empty() {
            r.pass(name);
        } else {
            bad.truncate(5);
            r.push(name, Status::Fail, bad);
        }
    }
    Ok(r)
}
