//! Objects living along the units: the units algebroid, the two cores, star sections, invariant
//! extensions, the induced brackets and the structure induced on the base.

use crate::dirac::{check_lagrangian, courant_tensor, dorfman_bracket, DiracFrame, PSection, PVec};
use crate::error::{Error, Result};
use crate::expr::RationalFunction;
use crate::expr::Q;
use crate::geometry::{differential, eval_matrix, PointP, VectorField, RF};
use crate::groupoid::{frame_at, GroupoidDef};
use crate::linalg::{independent_subset, nullspace, rank, solve, Matrix};
use crate::report::{Report, Status};
use crate::sampling::Sampler;

/// A column of `𝖯_G` along the units, in base coordinates (vector part then covector part).
pub type UnitColumn = PVec<RF>;

/// Left or right invariant extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

pub(crate) fn stack_matrix(cols: &[PVec<RF>], rows: usize, zero: &RF) -> Matrix<RF> {
    Matrix::from_cols(cols.iter().map(|c| c.stacked()).collect(), rows, zero)
}

/// Multiplies a column by its denominators so that all entries become polynomials.
pub fn clear_denominators(col: &PVec<RF>) -> PVec<RF> {
    let mut out = col.clone();
    loop {
        let den = out
            .stacked()
            .into_iter()
            .find(|c| !c.den().is_constant())
            .map(|c| c.den().clone());
        match den {
            Some(d) => out = out.scale(&RationalFunction::from_poly(d)),
            None => return out,
        }
    }
}

/// Symbolic span membership over the function field.
pub fn span_contains(gens: &[PVec<RF>], x: &PVec<RF>, zero: &RF) -> bool {
    let rows = 2 * x.dim();
    let base = rank(&stack_matrix(gens, rows, zero));
    let mut all = gens.to_vec();
    all.push(x.clone());
    rank(&stack_matrix(&all, rows, zero)) == base
}

/// `x ∈ D` for a Lagrangian `D` spanned by `gens`, tested by pairing.
pub fn orthogonal_to_all(gens: &[PVec<RF>], x: &PVec<RF>) -> Option<usize> {
    gens.iter().position(|g| !g.pairing(x).is_zero())
}

fn non_constant_denominators(cols: &[PVec<RF>]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for c in cols {
        for e in c.stacked() {
            if !e.den().is_constant() {
                let s = e.den().to_string();
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// Restriction of a section of `𝖯_G` along the unit map.
pub fn restrict_to_units(def: &GroupoidDef, x: &PVec<RF>) -> Result<UnitColumn> {
    Ok(PVec::new(
        def.unit.pull_column(&x.vector)?,
        def.unit.pull_column(&x.covector)?,
    ))
}

/// `𝕋t` (resp. `𝕋s`) of a unit column.
pub fn target_units(def: &GroupoidDef, x: &UnitColumn) -> UnitColumn {
    PVec::from_stacked(&def.calc.target_units.apply(&x.stacked()))
}

pub fn source_units(def: &GroupoidDef, x: &UnitColumn) -> UnitColumn {
    PVec::from_stacked(&def.calc.source_units.apply(&x.stacked()))
}

/// `σ^l(g) = 0_g ⋆ σ(s(g))` for `σ ∈ ker 𝕋t`, or `σ^r(g) = σ(t(g)) ⋆ 0_g` for `σ ∈ ker 𝕋s`.
pub fn invariant_extension(def: &GroupoidDef, sigma: &UnitColumn, side: Side) -> Result<PVec<RF>> {
    let (proj, foot, translation, jfoot) = match side {
        Side::Left => (
            target_units(def, sigma),
            &def.src,
            &def.calc.left,
            &def.calc.js,
        ),
        Side::Right => (
            source_units(def, sigma),
            &def.tgt,
            &def.calc.right,
            &def.calc.jt,
        ),
    };
    if !proj.is_zero() {
        let which = if side == Side::Left { "t" } else { "s" };
        return Err(Error::WrongKernel(format!(
            "{sigma} is not killed by the groupoid {which}-map"
        )));
    }
    let v = translation.apply(&foot.pull_column(&sigma.vector)?);
    // γ = (T_p foot)^* α_p with α_p = (Tε)^* γ
    let jeps = foot.pull_matrix(&def.calc.jeps)?;
    let alpha = jeps.apply_transpose(&foot.pull_column(&sigma.covector)?);
    Ok(PVec::new(v, jfoot.apply_transpose(&alpha)))
}

/// Function on `G` vanishing on the units: `g_k − ε(t(g))_k` for the first `k` where it is nonzero.
pub fn vanishing_on_units(def: &GroupoidDef) -> Option<RF> {
    let et = def.unit.compose(&def.tgt).ok()?;
    (0..def.n())
        .map(|k| def.total.coordinate(k) - et.components()[k].clone())
        .find(|f| !f.is_zero())
}

fn as_section(def: &GroupoidDef, x: &PVec<RF>) -> Result<PSection> {
    PSection::from_columns(&def.total, x.clone())
}

/// Units algebroid, cores and star sections of a multiplicative Dirac frame.
#[derive(Clone, Debug)]
pub struct Infinitesimal {
    pub def: GroupoidDef,
    pub frame: DiracFrame,
    /// `D_G|_P`.
    pub restricted: Vec<UnitColumn>,
    /// Frame of `𝔄(D_G) = 𝕋t(D_G|_P)`.
    pub units: Vec<UnitColumn>,
    pub s_core: Vec<UnitColumn>,
    pub t_core: Vec<UnitColumn>,
    /// Star sections of the `units` frame, one per generator.
    pub stars: Vec<PVec<RF>>,
    /// Denominators away from which the generic solves are valid.
    pub valid_away_from: Vec<String>,
    pub witness: PointP,
}

impl Infinitesimal {
    pub fn new(def: &GroupoidDef, frame: &DiracFrame) -> Result<Self> {
        def.total.expect_chart(&frame.chart)?;
        let n = def.n();
        let pz = def.base.zero();
        let restricted = def.restrict_columns(&frame.columns())?;
        let rmat = stack_matrix(&restricted, 2 * n, &pz);
        let (witness, ()) = def
            .witness(|p| {
                let m = eval_matrix(&rmat, &p.coords)?;
                if rank(&m) < n {
                    return Err(Error::RankDeficientAtPoint(p.to_string()));
                }
                Ok(())
            })
            .map_err(|_| {
                Error::RankDrop("the frame degenerates along the units at every witness".into())
            })?;

        let images: Vec<Vec<RF>> = restricted
            .iter()
            .map(|c| def.calc.target_units.apply(&c.stacked()))
            .collect();
        let units: Vec<UnitColumn> = independent_subset(&images, &pz)
            .into_iter()
            .map(|i| PVec::from_stacked(&images[i]))
            .collect();
        let core = |map: &Matrix<RF>| -> Vec<UnitColumn> {
            nullspace(&map.mul(&rmat))
                .into_iter()
                .map(|c| clear_denominators(&PVec::from_stacked(&rmat.apply(&c))))
                .collect()
        };
        let s_core = core(&def.calc.source_units);
        let t_core = core(&def.calc.target_units);
        if units.len() + t_core.len() != n || units.len() + s_core.len() != n {
            return Err(Error::RankDrop(format!(
                "rank 𝔄 = {}, rank Is = {}, rank It = {} do not split a rank {n} bundle",
                units.len(),
                s_core.len(),
                t_core.len()
            )));
        }

        let mut inf = Infinitesimal {
            def: def.clone(),
            frame: frame.clone(),
            restricted,
            units,
            s_core,
            t_core,
            stars: Vec::new(),
            valid_away_from: Vec::new(),
            witness,
        };
        inf.stars = inf
            .units
            .iter()
            .map(|a| inf.star_of_generator(a))
            .collect::<Result<_>>()?;
        inf.valid_away_from = non_constant_denominators(&inf.stars);
        Ok(inf)
    }

    fn gz(&self) -> RF {
        self.def.total.zero()
    }

    fn pz(&self) -> RF {
        self.def.base.zero()
    }

    pub fn frame_matrix(&self) -> Matrix<RF> {
        stack_matrix(&self.frame.columns(), 2 * self.def.n(), &self.gz())
    }

    /// Generic solve of `𝕋s(ξ(g)) = a(s(g))` with `ξ` in the frame, corrected so that `ξ|_P = a`.
    fn star_of_generator(&self, a: &UnitColumn) -> Result<PVec<RF>> {
        let def = &self.def;
        let fm = self.frame_matrix();
        let system = def.calc.source_sym.mul(&fm);
        let rhs = def.src.pull_column(&a.stacked())?;
        let sol = solve(&system, &rhs).ok_or_else(|| {
            Error::GenericSolveFailed(format!("no section of D projects onto {a}"))
        })?;
        let xi = PVec::from_stacked(&fm.apply(&sol.particular));
        let defect = restrict_to_units(def, &xi)?.sub(a);
        let xi = xi.sub(&invariant_extension(def, &defect, Side::Right)?);
        Ok(xi)
    }

    /// Coefficients of a unit column in the `units` frame.
    pub fn units_coefficients(&self, x: &UnitColumn) -> Result<Vec<RF>> {
        let m = stack_matrix(&self.units, 2 * self.def.n(), &self.pz());
        let sol = solve(&m, &x.stacked())
            .ok_or_else(|| Error::GenericSolveFailed(format!("{x} is not a section of 𝔄")))?;
        Ok(sol.particular)
    }

    pub fn in_units(&self, x: &UnitColumn) -> bool {
        span_contains(&self.units, x, &self.pz())
    }

    pub fn in_s_core(&self, x: &UnitColumn) -> bool {
        span_contains(&self.s_core, x, &self.pz())
    }

    /// Star section of an arbitrary section of `𝔄`: `Σ (f_j∘s) ξ_j`.
    pub fn star_section(&self, x: &UnitColumn) -> Result<PVec<RF>> {
        let coeffs = self.units_coefficients(x)?;
        let mut acc = PVec::zero(self.def.n(), &self.gz());
        for (f, star) in coeffs.iter().zip(&self.stars) {
            if f.is_zero() {
                continue;
            }
            acc = acc.add(&star.scale(&self.def.src.pull_function(f)?));
        }
        Ok(acc)
    }

    /// Star section plus `φ·ι^r` for a function `φ` vanishing on the units and `ι ∈ Iˢ`.
    pub fn perturbed_star(&self, x: &UnitColumn, core_index: usize) -> Result<PVec<RF>> {
        let base = self.star_section(x)?;
        let (Some(phi), Some(iota)) = (vanishing_on_units(&self.def), self.s_core.get(core_index))
        else {
            return Ok(base);
        };
        Ok(base.add(&invariant_extension(&self.def, iota, Side::Right)?.scale(&phi)))
    }

    /// Symbolic check of the defining invariants of a star section.
    pub fn is_star_section(&self, xi: &PVec<RF>, shadow: &UnitColumn) -> Result<Option<String>> {
        let def = &self.def;
        if restrict_to_units(def, xi)? != *shadow {
            return Ok(Some(
                "restriction to the units differs from the shadow".into(),
            ));
        }
        let lhs = def.calc.source_sym.apply(&xi.stacked());
        if lhs != def.src.pull_column(&shadow.stacked())? {
            return Ok(Some("groupoid source does not match the shadow".into()));
        }
        if let Some(j) = orthogonal_to_all(&self.frame.columns(), xi) {
            return Ok(Some(format!("not in D: pairs nontrivially with e{j}")));
        }
        Ok(None)
    }

    fn dorfman_columns(&self, a: &PVec<RF>, b: &PVec<RF>) -> Result<PVec<RF>> {
        Ok(dorfman_bracket(&as_section(&self.def, a)?, &as_section(&self.def, b)?)?.columns())
    }

    /// `[ξ, η]|_P` for arbitrary sections of `𝖯_G`.
    pub fn restricted_bracket(&self, xi: &PVec<RF>, eta: &PVec<RF>) -> Result<UnitColumn> {
        restrict_to_units(&self.def, &self.dorfman_columns(xi, eta)?)
    }

    /// `[ξ̄, η̄]_⋆ = [ξ, η]|_P` for star sections `ξ`, `η`.
    pub fn star_bracket(&self, x: &UnitColumn, y: &UnitColumn) -> Result<UnitColumn> {
        self.restricted_bracket(&self.star_section(x)?, &self.star_section(y)?)
    }

    /// `[σ, τ] = [σ^r, τ^r]|_P` on sections of `Iˢ`.
    pub fn core_bracket(&self, s: &UnitColumn, t: &UnitColumn) -> Result<UnitColumn> {
        let a = invariant_extension(&self.def, s, Side::Right)?;
        let b = invariant_extension(&self.def, t, Side::Right)?;
        restrict_to_units(&self.def, &self.dorfman_columns(&a, &b)?)
    }

    /// Anchor `𝖺_⋆(v, α) = v`, as a vector field on the base via `Tt`.
    pub fn units_anchor(&self, x: &UnitColumn) -> Vec<RF> {
        self.def.calc.jt_units.apply(&x.vector)
    }

    /// `£_{Z^l}ξ` split as `ℒ_Z ξ + σ^l`; returns both summands.
    pub fn lie_derivative_star(&self, z: &[RF], xi: &PVec<RF>) -> Result<(PVec<RF>, PVec<RF>)> {
        let def = &self.def;
        let n = def.n();
        let zcol = PVec::new(z.to_vec(), def.base.zeros(n));
        let zl = invariant_extension(def, &zcol, Side::Left)?;
        let l = self.dorfman_columns(&zl, xi)?;
        let lp = restrict_to_units(def, &l)?;
        let remainder = invariant_extension(def, &lp.sub(&target_units(def, &lp)), Side::Left)?;
        Ok((l.sub(&remainder), remainder))
    }

    /// `D_G ∩ (T_P G ⊕ (AG)°)` pushed forward by `(Tt, Tε*)`.
    pub fn base_dirac(&self, samples: usize, seed: u64) -> Result<(Option<DiracFrame>, Report)> {
        let def = &self.def;
        let (n, m) = (def.n(), def.m());
        let pz = self.pz();
        let mut r = Report::new("base-dirac");
        r.seed = Some(seed);
        let ag = nullspace(&def.calc.jt_units);
        // coefficients c with the covector part of D|_P c annihilating AG
        let cov = Matrix::from_cols(
            self.restricted.iter().map(|c| c.covector.clone()).collect(),
            n,
            &pz,
        );
        let constraint = Matrix::from_rows(ag.clone(), n, &pz).mul(&cov);
        let rmat = stack_matrix(&self.restricted, 2 * n, &pz);
        let images: Vec<Vec<RF>> = nullspace(&constraint)
            .into_iter()
            .map(|c| {
                let x = PVec::from_stacked(&rmat.apply(&c));
                let v = def.calc.jt_units.apply(&x.vector);
                let beta = def.calc.jeps.apply_transpose(&x.covector);
                v.into_iter().chain(beta).collect()
            })
            .collect();
        let chosen = independent_subset(&images, &pz);
        let sections = chosen
            .iter()
            .map(|&i| {
                let col = clear_denominators(&PVec::from_stacked(&images[i]));
                PSection::from_columns(&def.base, col)
            })
            .collect::<Result<Vec<_>>>()?;
        if sections.len() != m {
            r.fail(
                "D_P has full rank",
                format!("rank {} instead of {m}", sections.len()),
            );
            return Ok((None, r));
        }
        let dp = DiracFrame::new(&def.base, sections, "induced on the base")?;
        if m > 0 {
            r.absorb("D_P", check_lagrangian(&dp, &self.witness)?);
        } else {
            r.pass("D_P ");
        }

        // TP ∩ G₀ along sampled units, G₀ = {v : (v, 0) ∈ D}
        let mut sampler = Sampler::new(seed);
        let mut ranks = Vec::new();
        for _ in 0..samples {
            let (p, k) = sampler.point_where(&def.base, |p| {
                let fm = eval_matrix(&rmat, &p.coords)?;
                if rank(&fm) < n {
                    return Err(Error::RankDeficientAtPoint(p.to_string()));
                }
                // v = D c with α = 0, tangent to P: (I − Jε Jt) v = 0
                let je = eval_matrix(&def.calc.jeps, &p.coords)?;
                let jt = eval_matrix(&def.calc.jt_units, &p.coords)?;
                let proj = Matrix::identity(n, &Q::from_integer(0.into())).sub(&je.mul(&jt));
                let zq = Q::from_integer(0.into());
                let mut rows: Vec<Vec<Q>> = (n..2 * n).map(|i| fm.row(i)).collect();
                let vpart = Matrix::from_rows((0..n).map(|i| fm.row(i)).collect(), n, &zq);
                let pv = proj.mul(&vpart);
                rows.extend((0..n).map(|i| pv.row(i)));
                let sols = nullspace(&Matrix::from_rows(rows, n, &zq));
                let vs: Vec<Vec<Q>> = sols.iter().map(|c| vpart.apply(c)).collect();
                Ok(if vs.is_empty() {
                    0
                } else {
                    rank(&Matrix::from_cols(vs, n, &zq))
                })
            })?;
            r.sample_points.push(p.to_string());
            ranks.push((p, k));
        }
        let first = ranks.first().map(|x| x.1);
        let jumps: Vec<String> = ranks
            .iter()
            .filter(|(_, k)| Some(*k) != first)
            .map(|(p, k)| format!("rank {k} at {p}"))
            .collect();
        if jumps.is_empty() {
            r.pass(format!(
                "TP ∩ G0 has constant rank {} (sampled)",
                first.unwrap_or(0)
            ));
        } else {
            r.push(
                "TP ∩ G0 has constant rank (sampled)",
                Status::NotApplicable,
                jumps,
            );
        }

        // t is forward Dirac at sampled arrows
        let dcols = dp.columns();
        let mut bad = Vec::new();
        for _ in 0..samples.min(5) {
            let (g, found) = sampler.point_where(&def.total, |g| {
                let fg = frame_at(&self.frame, g)?;
                let tg = def.tgt.apply_at(g)?;
                let jt = eval_matrix(&def.calc.jt, &g.coords)?;
                let zq = Q::from_integer(0.into());
                // unknowns (c, β): covector part of F c equals Jt^T β
                let mut cols: Vec<Vec<Q>> = (0..n).map(|j| fg.col(j)[n..].to_vec()).collect();
                let jtt = jt.transpose();
                cols.extend((0..m).map(|j| jtt.col(j).into_iter().map(|x| -x).collect::<Vec<_>>()));
                let sols = nullspace(&Matrix::from_cols(cols, n, &zq));
                let dpt = crate::dirac::frame_matrix_at(&dcols, m, &tg.coords)?;
                let mut out = Vec::new();
                let mut images = Vec::new();
                for s in &sols {
                    let v = Matrix::from_rows((0..n).map(|i| fg.row(i)).collect(), n, &zq)
                        .apply(&s[..n]);
                    let x = PVec::new(jt.apply(&v), s[n..].to_vec());
                    images.push(x.stacked());
                    if (0..m).any(|j| PVec::from_stacked(&dpt.col(j)).pairing(&x) != zq) {
                        out.push(format!("({x}) not in D_P at {tg}"));
                    }
                }
                let rk = if images.is_empty() {
                    0
                } else {
                    rank(&Matrix::from_cols(images, 2 * m, &zq))
                };
                if rk != m {
                    out.push(format!("forward image has rank {rk} at {tg}"));
                }
                Ok(out)
            })?;
            r.sample_points.push(format!("arrow {g}"));
            bad.extend(found.into_iter().map(|w| format!("g = {g}: {w}")));
        }
        if bad.is_empty() {
            r.pass("t is a forward Dirac map (sampled)");
        } else {
            bad.truncate(5);
            r.push("t is a forward Dirac map (sampled)", Status::Fail, bad);
        }
        Ok((Some(dp), r))
    }

    /// Symbolic checks on the splitting, cores and star sections.
    pub fn report(&self) -> Result<Report> {
        let mut r = Report::new("units-algebroid");
        let n = self.def.n();
        r.note(format!(
            "rank 𝔄 = {}, rank Is = {}, rank It = {}, rank D|P = {n}",
            self.units.len(),
            self.s_core.len(),
            self.t_core.len()
        ));
        let restricted = &self.restricted;
        let bad = self
            .units
            .iter()
            .chain(&self.s_core)
            .chain(&self.t_core)
            .position(|x| orthogonal_to_all(restricted, x).is_some());
        r.record("generators lie in D|P", bad.is_none(), || {
            format!("generator {}", bad.unwrap_or(0))
        });
        let pz = self.pz();
        let mut split: Vec<PVec<RF>> = self.units.clone();
        split.extend(self.t_core.iter().cloned());
        r.record(
            "D|P = 𝔄 ⊕ It",
            rank(&stack_matrix(&split, 2 * n, &pz)) == n,
            || "rank defect".into(),
        );
        let mut split: Vec<PVec<RF>> = self.units.clone();
        split.extend(self.s_core.iter().cloned());
        r.record(
            "D|P = 𝔄 ⊕ Is",
            rank(&stack_matrix(&split, 2 * n, &pz)) == n,
            || "rank defect".into(),
        );
        let bad = self.units.iter().position(|a| {
            let t = target_units(&self.def, a);
            let s = source_units(&self.def, a);
            t != *a || s != *a
        });
        r.record("𝔄 consists of units", bad.is_none(), || {
            format!("generator {}", bad.unwrap_or(0))
        });
        let mut failures = Vec::new();
        for (j, (star, a)) in self.stars.iter().zip(&self.units).enumerate() {
            if let Some(w) = self.is_star_section(star, a)? {
                failures.push(format!("star section {j}: {w}"));
            }
        }
        if failures.is_empty() {
            let c = r.pass("star sections");
            if !self.valid_away_from.is_empty() {
                c.valid_away_from = Some(self.valid_away_from.join(" * "));
            }
        } else {
            r.push("star sections", Status::Fail, failures);
        }
        Ok(r)
    }

    /// Closedness through the units algebroid and the core, compared with the Courant tensor.
    pub fn integrability_criterion(&self) -> Result<Report> {
        let mut r = Report::new("integrability");
        let k = self.units.len();
        let mut brackets = vec![vec![None; k]; k];
        let mut outside = Vec::new();
        for i in 0..k {
            for j in 0..k {
                let b = self.star_bracket(&self.units[i], &self.units[j])?;
                if !self.in_units(&b) {
                    outside.push(format!("[a{i}, a{j}] = {b}"));
                }
                brackets[i][j] = Some(b);
            }
        }
        let units_closed = outside.is_empty();
        if units_closed {
            r.pass("𝔄 is closed under the star bracket");
            let mut jac = None;
            'outer: for i in 0..k {
                for j in (i + 1)..k {
                    for l in (j + 1)..k {
                        let br = |a: usize, b: usize| brackets[a][b].clone().expect("filled");
                        let sum = self
                            .star_bracket(&br(i, j), &self.units[l])?
                            .add(&self.star_bracket(&br(j, l), &self.units[i])?)
                            .add(&self.star_bracket(&br(l, i), &self.units[j])?);
                        if !sum.is_zero() {
                            jac = Some(format!("a{i}, a{j}, a{l}: {sum}"));
                            break 'outer;
                        }
                    }
                }
            }
            r.record("Jacobi identity on 𝔄", jac.is_none(), || {
                jac.clone().unwrap_or_default()
            });
        } else {
            outside.truncate(3);
            r.push("𝔄 is closed under the star bracket", Status::Fail, outside);
        }
        let mut core_out = Vec::new();
        for i in 0..self.s_core.len() {
            for j in i..self.s_core.len() {
                let b = self.core_bracket(&self.s_core[i], &self.s_core[j])?;
                if !self.in_s_core(&b) {
                    core_out.push(format!("[i{i}, i{j}] = {b}"));
                }
            }
        }
        let core_closed = core_out.is_empty();
        if core_closed {
            r.pass("Is is closed under the core bracket");
        } else {
            core_out.truncate(3);
            r.push(
                "Is is closed under the core bracket",
                Status::Fail,
                core_out,
            );
        }
        let criterion = r.passed();
        let tensor = courant_tensor(&self.frame)?;
        r.note(format!(
            "criterion verdict: {}; Courant tensor verdict: {}",
            if criterion { "closed" } else { "not closed" },
            if tensor.closed {
                "closed"
            } else {
                "not closed"
            }
        ));
        r.record(
            "criterion agrees with the Courant tensor",
            criterion == tensor.closed,
            || format!("criterion {criterion}, tensor {}", tensor.closed),
        );
        Ok(r)
    }
}

/// `𝒟`-free helper: `df` of a base function as a covector column in `G` coordinates along `ε`.
pub fn pulled_differential(def: &GroupoidDef, f: &RF) -> Result<Vec<RF>> {
    let df = differential(&def.base, f);
    Ok(def.calc.js_units.apply_transpose(df.components()))
}

/// `Tε` of a base vector field, as a column along the units.
pub fn unit_vector(def: &GroupoidDef, x: &VectorField) -> Vec<RF> {
    def.calc.jeps.apply(&x.components)
}

/// Witness base point used by reports.
pub fn witness_point(def: &GroupoidDef) -> Result<PointP> {
    Ok(def.witness(|_| Ok(()))?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::{from_bivector, from_two_form, Bivector};
    use crate::geometry::Chart;
    use crate::geometry::KForm;
    use crate::groupoid::{pair_dirac, vector_group};

    fn poisson_group() -> Infinitesimal {
        let def = vector_group(&["x", "y"]).unwrap();
        let pi = Bivector::from_entries(&def.total, vec![((0, 1), def.total.parse("x").unwrap())])
            .unwrap();
        Infinitesimal::new(&def, &from_bivector(&pi)).unwrap()
    }

    fn col(c: &Chart, v: &[&str], a: &[&str]) -> PVec<RF> {
        PVec::new(
            v.iter().map(|s| c.parse(s).unwrap()).collect(),
            a.iter().map(|s| c.parse(s).unwrap()).collect(),
        )
    }

    #[test]
    fn poisson_units_and_cores() {
        let inf = poisson_group();
        assert_eq!(inf.units.len(), 2);
        assert!(inf.s_core.is_empty() && inf.t_core.is_empty());
        assert!(inf.report().unwrap().passed());
        let p = &inf.def.base;
        let dy = col(p, &["0", "0"], &["0", "1"]);
        assert!(inf.in_units(&dy));
        let star = inf.star_section(&dy).unwrap();
        assert_eq!(star, col(&inf.def.total, &["-x", "0"], &["0", "1"]));
    }

    #[test]
    fn poisson_star_bracket_is_linearized() {
        let inf = poisson_group();
        let p = &inf.def.base;
        let dx = col(p, &["0", "0"], &["1", "0"]);
        let dy = col(p, &["0", "0"], &["0", "1"]);
        assert_eq!(inf.star_bracket(&dx, &dy).unwrap(), dx);
        assert!(inf.star_bracket(&dx, &dx).unwrap().is_zero());
        assert!(inf.integrability_criterion().unwrap().passed());
    }

    #[test]
    fn pair_case_closed_forms() {
        let m = Chart::new("M", ["x", "y"]).unwrap();
        let pi = Bivector::from_entries(&m, vec![((0, 1), m.parse("x").unwrap())]).unwrap();
        let (def, frame) = pair_dirac(&from_bivector(&pi)).unwrap();
        let inf = Infinitesimal::new(&def, &frame).unwrap();
        assert!(
            inf.report().unwrap().passed(),
            "{}",
            inf.report().unwrap().to_text()
        );
        // 𝔄 = {(v, v, α, −α)}, Is = {(v, 0, α, 0)} with (v, α) ∈ D_M
        let a = col(&m, &["0", "x", "0", "x"], &["1", "0", "-1", "0"]);
        let s = col(&m, &["0", "x", "0", "0"], &["1", "0", "0", "0"]);
        assert!(inf.in_units(&a));
        assert!(inf.in_s_core(&s));
        let star = inf.star_section(&a).unwrap();
        assert!(inf.is_star_section(&star, &a).unwrap().is_none());
        assert!(inf.integrability_criterion().unwrap().passed());
    }

    #[test]
    fn left_extension_on_pair_groupoid() {
        let m = Chart::new("M", ["x"]).unwrap();
        let pi = Bivector::zero(&m);
        let (def, _) = pair_dirac(&from_bivector(&pi)).unwrap();
        let sigma = col(&m, &["0", "x^2"], &["0", "3"]);
        let ext = invariant_extension(&def, &sigma, Side::Left).unwrap();
        assert_eq!(ext, col(&def.total, &["0", "x2^2"], &["0", "3"]));
        assert!(matches!(
            invariant_extension(&def, &col(&m, &["1", "0"], &["0", "0"]), Side::Left),
            Err(Error::WrongKernel(_))
        ));
    }

    #[test]
    fn non_closed_pair_fails_criterion() {
        let m = Chart::new("M", ["x", "y", "z"]).unwrap();
        let omega = KForm::from_entries(&m, 2, vec![(vec![1, 2], m.parse("x").unwrap())]).unwrap();
        let (def, frame) = pair_dirac(&from_two_form(&omega).unwrap()).unwrap();
        let inf = Infinitesimal::new(&def, &frame).unwrap();
        let r = inf.integrability_criterion().unwrap();
        assert!(!r.passed());
        assert_eq!(
            r.check("criterion agrees with the Courant tensor")
                .unwrap()
                .status,
            Status::Pass
        );
    }

    #[test]
    fn base_dirac_of_pair_is_original() {
        let m = Chart::new("M", ["x", "y"]).unwrap();
        let pi = Bivector::from_entries(&m, vec![((0, 1), m.parse("x").unwrap())]).unwrap();
        let dm = from_bivector(&pi);
        let (def, frame) = pair_dirac(&dm).unwrap();
        let inf = Infinitesimal::new(&def, &frame).unwrap();
        let (dp, r) = inf.base_dirac(4, 3).unwrap();
        let dp = dp.unwrap();
        for s in dm.columns() {
            assert!(orthogonal_to_all(&dp.columns(), &s).is_none());
        }
        assert_eq!(
            r.check("t is a forward Dirac map (sampled)")
                .unwrap()
                .status,
            Status::Pass
        );
    }

    #[test]
    fn lie_derivative_split() {
        let inf = poisson_group();
        let p = &inf.def.base;
        let dy = col(p, &["0", "0"], &["0", "1"]);
        let xi = inf.star_section(&dy).unwrap();
        let z: Vec<RF> = vec![p.parse("1").unwrap(), p.zero()];
        let (lz, rem) = inf.lie_derivative_star(&z, &xi).unwrap();
        let shadow = restrict_to_units(&inf.def, &lz).unwrap();
        assert!(inf.is_star_section(&lz, &shadow).unwrap().is_none());
        assert!(target_units(&inf.def, &restrict_to_units(&inf.def, &rem).unwrap()).is_zero());
        let zero = vec![p.zero(), p.zero()];
        let (a, b) = inf.lie_derivative_star(&zero, &xi).unwrap();
        assert!(a.is_zero() && b.is_zero());
    }
}
