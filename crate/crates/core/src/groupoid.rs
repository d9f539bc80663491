//! Lie groupoids given by rational structure maps, their tangent and cotangent prolongations, and
//! multiplicativity of Dirac frames.

use crate::dirac::{DiracFrame, PSection, PVec};
use crate::error::{Error, Result};
use crate::expr::Q;
use crate::geometry::{eval_matrix, eval_vec, Chart, PointP, SmoothMap, RF};
use crate::linalg::{rank, solve, Matrix, Scalar};
use crate::report::Report;
use crate::sampling::{Sampler, WITNESS_SEED};

fn zq() -> Q {
    Q::from_integer(0.into())
}

/// Block diagonal `[[a, 0], [0, b]]`.
pub(crate) fn block_diag<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols(), a.zero_elem());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m.set(i, j, a.get(i, j).clone());
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            m.set(a.rows() + i, a.cols() + j, b.get(i, j).clone());
        }
    }
    m
}

fn columns(m: &Matrix<RF>, range: std::ops::Range<usize>) -> Matrix<RF> {
    let cols = range.map(|j| m.col(j)).collect();
    Matrix::from_cols(cols, m.rows(), m.zero_elem())
}

/// Symbolic derivatives used throughout; computed once per groupoid.
#[derive(Clone, Debug)]
pub struct Calculus {
    /// `Ts`, `Tt` in arrow coordinates.
    pub js: Matrix<RF>,
    pub jt: Matrix<RF>,
    /// `Tε` in base coordinates.
    pub jeps: Matrix<RF>,
    pub jinv: Matrix<RF>,
    pub jmult: Matrix<RF>,
    pub jpr1: Matrix<RF>,
    pub jpr2: Matrix<RF>,
    /// Left translation `T L_g` from `T_{ε(s(g))}G`, precomposed with the projection onto `ker Tt`.
    pub left: Matrix<RF>,
    /// Right translation `T R_g` from `T_{ε(t(g))}G`, precomposed with the projection onto `ker Ts`.
    pub right: Matrix<RF>,
    /// Groupoid source and target of `TG ⊕ T*G`, landing in `𝖯_G` at `ε(s(g))`, resp. `ε(t(g))`.
    pub source_sym: Matrix<RF>,
    pub target_sym: Matrix<RF>,
    /// The same two maps at units, in base coordinates.
    pub source_units: Matrix<RF>,
    pub target_units: Matrix<RF>,
    /// `Ts`, `Tt` at `ε(p)`, in base coordinates.
    pub js_units: Matrix<RF>,
    pub jt_units: Matrix<RF>,
}

/// Lie groupoid `G ⇉ P` with a parametrized composable set `C`.
#[derive(Clone, Debug)]
pub struct GroupoidDef {
    pub name: String,
    pub total: Chart,
    pub base: Chart,
    pub composable: Chart,
    /// `G × G` with coordinates `g_<v>` then `h_<v>`.
    pub pair: Chart,
    pub src: SmoothMap,
    pub tgt: SmoothMap,
    pub unit: SmoothMap,
    pub inv: SmoothMap,
    pub pr1: SmoothMap,
    pub pr2: SmoothMap,
    pub mult: SmoothMap,
    /// Left inverse of `(pr1, pr2)`, defined on `G × G`.
    pub join: SmoothMap,
    pub calc: Calculus,
}

/// Parts of a groupoid before the derived calculus is built.
#[derive(Clone, Debug)]
pub struct GroupoidParts {
    pub name: String,
    pub total: Chart,
    pub base: Chart,
    pub composable: Chart,
    pub src: SmoothMap,
    pub tgt: SmoothMap,
    pub unit: SmoothMap,
    pub inv: SmoothMap,
    pub pr1: SmoothMap,
    pub pr2: SmoothMap,
    pub mult: SmoothMap,
    pub join: SmoothMap,
}

pub fn pair_chart_of(total: &Chart) -> Result<Chart> {
    let names: Vec<String> = total
        .vars()
        .iter()
        .map(|v| format!("g_{v}"))
        .chain(total.vars().iter().map(|v| format!("h_{v}")))
        .collect();
    Ok(Chart::new(
        &format!("{}x{}", total.name(), total.name()),
        names,
    )?)
}

impl GroupoidDef {
    pub fn new(parts: GroupoidParts) -> Result<Self> {
        let GroupoidParts {
            name,
            total,
            base,
            composable,
            src,
            tgt,
            unit,
            inv,
            pr1,
            pr2,
            mult,
            join,
        } = parts;
        let pair = pair_chart_of(&total)?;
        let expect = |m: &SmoothMap, s: &Chart, t: &Chart, what: &str| -> Result<()> {
            if m.source() != s || m.target() != t {
                return Err(Error::Schema(format!(
                    "map `{what}` must go from {s} to {t}"
                )));
            }
            Ok(())
        };
        expect(&src, &total, &base, "source")?;
        expect(&tgt, &total, &base, "target")?;
        expect(&unit, &base, &total, "unit")?;
        expect(&inv, &total, &total, "inverse")?;
        expect(&pr1, &composable, &total, "pr1")?;
        expect(&pr2, &composable, &total, "pr2")?;
        expect(&mult, &composable, &total, "mult")?;
        expect(&join, &pair, &composable, "join")?;
        let calc = build_calculus(
            &total, &base, &pair, &src, &tgt, &unit, &inv, &pr1, &pr2, &mult, &join,
        )?;
        Ok(GroupoidDef {
            name,
            total,
            base,
            composable,
            pair,
            src,
            tgt,
            unit,
            inv,
            pr1,
            pr2,
            mult,
            join,
            calc,
        })
    }

    pub fn n(&self) -> usize {
        self.total.dim()
    }

    pub fn m(&self) -> usize {
        self.base.dim()
    }

    /// `G → G × G`, `g ↦ (a(g), b(g))`.
    fn pair_map(&self, a: &SmoothMap, b: &SmoothMap) -> Result<SmoothMap> {
        let comps = a
            .components()
            .iter()
            .chain(b.components())
            .cloned()
            .collect();
        Ok(SmoothMap::new(a.source(), &self.pair, comps)?)
    }

    pub fn join_at(&self, g: &PointP, h: &PointP) -> Result<PointP> {
        let sg = self.src.apply_at(g)?;
        let th = self.tgt.apply_at(h)?;
        if sg.coords != th.coords {
            return Err(Error::AxiomViolation {
                identity: "s(g) = t(h)".into(),
                witness: format!("g = {g}, h = {h}"),
            });
        }
        let gh = PointP::new(
            &self.pair,
            g.coords.iter().chain(&h.coords).cloned().collect(),
        )?;
        Ok(self.join.apply_at(&gh)?)
    }

    pub fn product_at(&self, g: &PointP, h: &PointP) -> Result<PointP> {
        let c = self.join_at(g, h)?;
        Ok(self.mult.apply_at(&c)?)
    }

    pub fn composable_at(&self, c: &PointP) -> Result<(PointP, PointP)> {
        Ok((self.pr1.apply_at(c)?, self.pr2.apply_at(c)?))
    }

    pub fn unit_at(&self, p: &PointP) -> Result<PointP> {
        Ok(self.unit.apply_at(p)?)
    }

    pub fn inverse_at(&self, g: &PointP) -> Result<PointP> {
        Ok(self.inv.apply_at(g)?)
    }

    /// `v_g ⋆ v_h` via the unique composable lift.
    pub fn tangent_mult_at(&self, g: &PointP, h: &PointP, vg: &[Q], vh: &[Q]) -> Result<Vec<Q>> {
        let c = self.join_at(g, h)?;
        let ts = eval_matrix(&self.calc.js, &g.coords)?.apply(vg);
        let tt = eval_matrix(&self.calc.jt, &h.coords)?.apply(vh);
        if ts != tt {
            return Err(Error::NotComposableTangent(format!("g = {g}, h = {h}")));
        }
        let p1 = eval_matrix(&self.calc.jpr1, &c.coords)?;
        let p2 = eval_matrix(&self.calc.jpr2, &c.coords)?;
        let rows = (0..self.n())
            .map(|i| p1.row(i))
            .chain((0..self.n()).map(|i| p2.row(i)))
            .collect();
        let stacked = Matrix::from_rows(rows, self.composable.dim(), &zq());
        let rhs: Vec<Q> = vg.iter().chain(vh).cloned().collect();
        let sol = solve(&stacked, &rhs)
            .ok_or_else(|| Error::NotComposableTangent(format!("no lift at {c}")))?;
        Ok(eval_matrix(&self.calc.jmult, &c.coords)?.apply(&sol.particular))
    }

    /// `α_g ⋆ α_h`: the covector `γ` at `g⋆h` with `γ(v_g ⋆ v_h) = α_g(v_g) + α_h(v_h)`.
    pub fn cotangent_mult_at(&self, g: &PointP, h: &PointP, ag: &[Q], ah: &[Q]) -> Result<Vec<Q>> {
        if self.hat_s_at(g, ag)? != self.hat_t_at(h, ah)? {
            return Err(Error::NotComposableCovector(format!("g = {g}, h = {h}")));
        }
        let c = self.join_at(g, h)?;
        let jm = eval_matrix(&self.calc.jmult, &c.coords)?;
        let rhs: Vec<Q> = {
            let a = eval_matrix(&self.calc.jpr1, &c.coords)?.apply_transpose(ag);
            let b = eval_matrix(&self.calc.jpr2, &c.coords)?.apply_transpose(ah);
            a.iter().zip(&b).map(|(x, y)| x + y).collect()
        };
        let sol = solve(&jm.transpose(), &rhs)
            .ok_or_else(|| Error::NotComposableCovector(format!("{c}")))?;
        if !sol.kernel.is_empty() {
            return Err(Error::SingularSystem(format!("{c}")));
        }
        Ok(sol.particular)
    }

    /// `ŝ(α_g)`, a covector at `ε(s(g))` vanishing on the units.
    pub fn hat_s_at(&self, g: &PointP, alpha: &[Q]) -> Result<Vec<Q>> {
        Ok(eval_matrix(&self.calc.left, &g.coords)?.apply_transpose(alpha))
    }

    /// `t̂(α_g)`, a covector at `ε(t(g))` vanishing on the units.
    pub fn hat_t_at(&self, g: &PointP, alpha: &[Q]) -> Result<Vec<Q>> {
        Ok(eval_matrix(&self.calc.right, &g.coords)?.apply_transpose(alpha))
    }

    /// Groupoid source of `(v, α) ∈ 𝖯_G(g)`, as an element of `𝖯_G(ε(s(g)))`.
    pub fn source_at(&self, g: &PointP, x: &PVec<Q>) -> Result<PVec<Q>> {
        Ok(PVec::from_stacked(
            &eval_matrix(&self.calc.source_sym, &g.coords)?.apply(&x.stacked()),
        ))
    }

    pub fn target_at(&self, g: &PointP, x: &PVec<Q>) -> Result<PVec<Q>> {
        Ok(PVec::from_stacked(
            &eval_matrix(&self.calc.target_sym, &g.coords)?.apply(&x.stacked()),
        ))
    }

    /// `(v, α)⁻¹` in `𝖯_G(g⁻¹)`.
    pub fn invert_at(&self, g: &PointP, x: &PVec<Q>) -> Result<(PointP, PVec<Q>)> {
        let gi = self.inverse_at(g)?;
        let v = eval_matrix(&self.calc.jinv, &g.coords)?.apply(&x.vector);
        let a = eval_matrix(&self.calc.jinv, &gi.coords)?.apply_transpose(&x.covector);
        Ok((gi, PVec::new(v, a.into_iter().map(|c| -c).collect())))
    }

    /// `(v_g, α_g) ⋆ (v_h, α_h)`.
    pub fn pontryagin_mult_at(
        &self,
        g: &PointP,
        h: &PointP,
        x: &PVec<Q>,
        y: &PVec<Q>,
    ) -> Result<PVec<Q>> {
        Ok(PVec::new(
            self.tangent_mult_at(g, h, &x.vector, &y.vector)?,
            self.cotangent_mult_at(g, h, &x.covector, &y.covector)?,
        ))
    }

    /// `ε(p)` as a point of `G`, with a frame evaluated there.
    pub fn restrict_columns(&self, cols: &[PVec<RF>]) -> Result<Vec<PVec<RF>>> {
        cols.iter()
            .map(|c| {
                Ok(PVec::new(
                    self.unit.pull_column(&c.vector)?,
                    self.unit.pull_column(&c.covector)?,
                ))
            })
            .collect()
    }

    /// A base point where `check` succeeds, drawn from the fixed witness stream.
    pub fn witness<T>(&self, check: impl FnMut(&PointP) -> Result<T>) -> Result<(PointP, T)> {
        Sampler::new(WITNESS_SEED).point_where(&self.base, check)
    }
}

#[allow(clippy::too_many_arguments)]
fn build_calculus(
    total: &Chart,
    base: &Chart,
    pair: &Chart,
    src: &SmoothMap,
    tgt: &SmoothMap,
    unit: &SmoothMap,
    inv: &SmoothMap,
    pr1: &SmoothMap,
    pr2: &SmoothMap,
    mult: &SmoothMap,
    join: &SmoothMap,
) -> Result<Calculus> {
    let n = total.dim();
    let gz = total.zero();
    let js = src.jacobian();
    let jt = tgt.jacobian();
    let jeps = unit.jacobian();
    let jmult = mult.jacobian();
    let jjoin = join.jacobian();
    let id_g = Matrix::identity(n, &gz);

    let unit_src = unit.compose(src)?;
    let unit_tgt = unit.compose(tgt)?;
    let embed = |a: &SmoothMap, b: &SmoothMap| -> Result<SmoothMap> {
        let comps = a
            .components()
            .iter()
            .chain(b.components())
            .cloned()
            .collect();
        Ok(SmoothMap::new(total, pair, comps)?)
    };
    let ident = SmoothMap::identity(total);

    // g ↦ (g, ε(s(g)))
    let left_embed = embed(&ident, &unit_src)?;
    let c_left = join.compose(&left_embed)?;
    let proj_left = id_g.sub(&src.pull_matrix(&jeps)?.mul(&unit_src.pull_matrix(&jt)?));
    let left = c_left
        .pull_matrix(&jmult)?
        .mul(&columns(&left_embed.pull_matrix(&jjoin)?, n..2 * n))
        .mul(&proj_left);

    // g ↦ (ε(t(g)), g)
    let right_embed = embed(&unit_tgt, &ident)?;
    let c_right = join.compose(&right_embed)?;
    let proj_right = id_g.sub(&tgt.pull_matrix(&jeps)?.mul(&unit_tgt.pull_matrix(&js)?));
    let right = c_right
        .pull_matrix(&jmult)?
        .mul(&columns(&right_embed.pull_matrix(&jjoin)?, 0..n))
        .mul(&proj_right);

    let source_sym = block_diag(&src.pull_matrix(&jeps)?.mul(&js), &left.transpose());
    let target_sym = block_diag(&tgt.pull_matrix(&jeps)?.mul(&jt), &right.transpose());

    let pz = base.zero();
    let id_p = Matrix::identity(n, &pz);
    let js_units = unit.pull_matrix(&js)?;
    let jt_units = unit.pull_matrix(&jt)?;
    let source_units = block_diag(
        &jeps.mul(&js_units),
        &id_p.sub(&jeps.mul(&jt_units)).transpose(),
    );
    let target_units = block_diag(
        &jeps.mul(&jt_units),
        &id_p.sub(&jeps.mul(&js_units)).transpose(),
    );
    let _ = pr1;
    Ok(Calculus {
        js,
        jt,
        jeps,
        jinv: inv.jacobian(),
        jmult,
        jpr1: pr1.jacobian(),
        jpr2: pr2.jacobian(),
        left,
        right,
        source_sym,
        target_sym,
        source_units,
        target_units,
        js_units,
        jt_units,
    })
}

fn maps_agree(report: &mut Report, name: &str, a: &SmoothMap, b: &SmoothMap) {
    report.record(name, a.same_as(b), || {
        let comps: Vec<String> = a
            .components()
            .iter()
            .zip(b.components())
            .map(|(x, y)| (x - y).to_string())
            .collect();
        format!("difference [{}]", comps.join(", "))
    });
}

/// Symbolic structure identities plus sampled associativity, unit and inverse laws.
pub fn check_groupoid_axioms(def: &GroupoidDef, samples: usize, seed: u64) -> Result<Report> {
    let mut r = Report::new("groupoid-axioms");
    let id_p = SmoothMap::identity(&def.base);
    maps_agree(&mut r, "s∘ε = id", &def.src.compose(&def.unit)?, &id_p);
    maps_agree(&mut r, "t∘ε = id", &def.tgt.compose(&def.unit)?, &id_p);
    maps_agree(
        &mut r,
        "t∘mult = t∘pr1",
        &def.tgt.compose(&def.mult)?,
        &def.tgt.compose(&def.pr1)?,
    );
    maps_agree(
        &mut r,
        "s∘mult = s∘pr2",
        &def.src.compose(&def.mult)?,
        &def.src.compose(&def.pr2)?,
    );
    maps_agree(
        &mut r,
        "s∘pr1 = t∘pr2",
        &def.src.compose(&def.pr1)?,
        &def.tgt.compose(&def.pr2)?,
    );
    maps_agree(&mut r, "s∘inv = t", &def.src.compose(&def.inv)?, &def.tgt);
    maps_agree(&mut r, "t∘inv = s", &def.tgt.compose(&def.inv)?, &def.src);
    let pr12 = def.pair_map(&def.pr1, &def.pr2)?;
    maps_agree(
        &mut r,
        "join∘(pr1,pr2) = id",
        &def.join.compose(&pr12)?,
        &SmoothMap::identity(&def.composable),
    );

    let mut sampler = Sampler::new(seed);
    r.seed = Some(seed);
    let mut failures: Vec<(String, String)> = Vec::new();
    for _ in 0..samples {
        let (c, found) = sampler.point_where(&def.composable, |c| {
            let (g, h) = def.composable_at(c)?;
            let gi = def.inverse_at(&g)?;
            let hi = def.inverse_at(&h)?;
            let mut bad = Vec::new();
            let mut eq = |name: &str, sides: Result<(PointP, PointP)>| -> Result<()> {
                match sides {
                    Ok((a, b)) if a != b => bad.push((name.to_string(), format!("{a} vs {b}"))),
                    Ok(_) => {}
                    // a broken law can leave the composable set
                    Err(Error::AxiomViolation { identity, witness }) => {
                        bad.push((name.to_string(), format!("{identity} fails for {witness}")))
                    }
                    Err(e) => return Err(e),
                }
                Ok(())
            };
            let es = def.unit_at(&def.src.apply_at(&g)?)?;
            let et = def.unit_at(&def.tgt.apply_at(&g)?)?;
            // associativity on (g, h, h⁻¹) and (g⁻¹, g, h)
            eq(
                "associativity",
                (|| {
                    let gh = def.product_at(&g, &h)?;
                    Ok((
                        def.product_at(&gh, &hi)?,
                        def.product_at(&g, &def.product_at(&h, &hi)?)?,
                    ))
                })(),
            )?;
            eq(
                "associativity",
                (|| {
                    let gh = def.product_at(&g, &h)?;
                    Ok((
                        def.product_at(&def.product_at(&gi, &g)?, &h)?,
                        def.product_at(&gi, &gh)?,
                    ))
                })(),
            )?;
            eq(
                "right unit",
                def.product_at(&g, &es).map(|x| (x, g.clone())),
            )?;
            eq("left unit", def.product_at(&et, &g).map(|x| (x, g.clone())))?;
            eq(
                "g⋆g⁻¹ = ε(t(g))",
                def.product_at(&g, &gi).map(|x| (x, et.clone())),
            )?;
            eq(
                "g⁻¹⋆g = ε(s(g))",
                def.product_at(&gi, &g).map(|x| (x, es.clone())),
            )?;
            Ok(bad)
        })?;
        r.sample_points.push(c.to_string());
        for (name, w) in found {
            failures.push((name, format!("at {c}: {w}")));
        }
    }
    for law in [
        "associativity",
        "right unit",
        "left unit",
        "g⋆g⁻¹ = ε(t(g))",
        "g⁻¹⋆g = ε(s(g))",
    ] {
        let w: Vec<String> = failures
            .iter()
            .filter(|(n, _)| n == law)
            .map(|(_, w)| w.clone())
            .collect();
        if w.is_empty() {
            r.pass(format!("{law} (sampled)"));
        } else {
            r.push(format!("{law} (sampled)"), crate::report::Status::Fail, w);
        }
    }
    Ok(r)
}

/// Pointwise frame with a full-rank check.
pub fn frame_at(frame: &DiracFrame, p: &PointP) -> Result<Matrix<Q>> {
    let m = frame.matrix_at(&p.coords)?;
    if rank(&m) < frame.chart.dim() {
        return Err(Error::RankDeficientAtPoint(p.to_string()));
    }
    Ok(m)
}

fn in_span_of_frame(m: &Matrix<Q>, x: &PVec<Q>) -> bool {
    (0..m.cols()).all(|j| PVec::from_stacked(&m.col(j)).pairing(x) == zq())
}

/// Multiplicativity of a Dirac frame by exact linear algebra at sampled composable pairs.
pub fn check_dirac_multiplicative(
    def: &GroupoidDef,
    frame: &DiracFrame,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    def.total.expect_chart(&frame.chart)?;
    let n = def.n();
    let mut r = Report::new("multiplicative");
    r.seed = Some(seed);
    let mut sampler = Sampler::new(seed);
    let mut product_failures = Vec::new();
    let mut checked = 0usize;
    for _ in 0..samples {
        let (c, outcome) = sampler.point_where(&def.composable, |c| {
            let (g, h) = def.composable_at(c)?;
            let gh = def.product_at(&g, &h)?;
            let fg = frame_at(frame, &g)?;
            let fh = frame_at(frame, &h)?;
            let fgh = frame_at(frame, &gh)?;
            // coefficient pairs (a, b) with 𝕋s(F_g a) = 𝕋t(F_h b)
            let sg = eval_matrix(&def.calc.source_sym, &g.coords)?.mul(&fg);
            let th = eval_matrix(&def.calc.target_sym, &h.coords)?.mul(&fh);
            let mut cols: Vec<Vec<Q>> = (0..n).map(|j| sg.col(j)).collect();
            cols.extend((0..n).map(|j| th.col(j).into_iter().map(|x| -x).collect::<Vec<_>>()));
            let system = Matrix::from_cols(cols, 2 * n, &zq());
            let pairs = crate::linalg::nullspace(&system);
            let mut bad = Vec::new();
            for coeff in &pairs {
                let x = PVec::from_stacked(&fg.apply(&coeff[..n]));
                let y = PVec::from_stacked(&fh.apply(&coeff[n..]));
                let prod = def.pontryagin_mult_at(&g, &h, &x, &y)?;
                if !in_span_of_frame(&fgh, &prod) {
                    bad.push(format!(
                        "g = {g}, h = {h}: {x} ⋆ {y} = {prod} not in D(g⋆h)"
                    ));
                }
            }
            Ok((pairs.len(), bad))
        })?;
        r.sample_points.push(c.to_string());
        checked += outcome.0;
        product_failures.extend(outcome.1);
    }
    if product_failures.is_empty() {
        r.pass("D(g) ⋆ D(h) ⊆ D(g⋆h)");
    } else {
        product_failures.truncate(5);
        r.push(
            "D(g) ⋆ D(h) ⊆ D(g⋆h)",
            crate::report::Status::Fail,
            product_failures,
        );
    }
    r.note(format!("{checked} composable frame products tested"));

    // unit condition: 𝕋t(D(ε(p))) ⊆ D(ε(p))
    let mut unit_failures = Vec::new();
    let restricted = def.restrict_columns(&frame.columns())?;
    for _ in 0..samples {
        let (p, bad) = sampler.point_where(&def.base, |p| {
            let cols = restricted
                .iter()
                .map(|c| Ok(c.evaluate_at(&p.coords)?.stacked()))
                .collect::<Result<Vec<_>>>()?;
            let fm = Matrix::from_cols(cols, 2 * n, &zq());
            if rank(&fm) < n {
                return Err(Error::RankDeficientAtPoint(p.to_string()));
            }
            let tt = eval_matrix(&def.calc.target_units, &p.coords)?;
            let mut bad = Vec::new();
            for j in 0..n {
                let img = PVec::from_stacked(&tt.apply(&fm.col(j)));
                if !in_span_of_frame(&fm, &img) {
                    bad.push(format!("at {p}: 𝕋t(e{j}) = {img} not in D"));
                }
            }
            Ok(bad)
        })?;
        r.sample_points.push(format!("base {p}"));
        unit_failures.extend(bad);
    }
    if unit_failures.is_empty() {
        r.pass("units: 𝕋t(D|P) ⊆ D|P");
    } else {
        unit_failures.truncate(5);
        r.push(
            "units: 𝕋t(D|P) ⊆ D|P",
            crate::report::Status::Fail,
            unit_failures,
        );
    }

    // inversion closure
    let mut inv_failures = Vec::new();
    for _ in 0..samples {
        let (g, bad) = sampler.point_where(&def.total, |g| {
            let fg = frame_at(frame, g)?;
            let gi = def.inverse_at(g)?;
            let fgi = frame_at(frame, &gi)?;
            let mut bad = Vec::new();
            for j in 0..n {
                let x = PVec::from_stacked(&fg.col(j));
                let (_, xi) = def.invert_at(g, &x)?;
                if !in_span_of_frame(&fgi, &xi) {
                    bad.push(format!("at g = {g}: inverse of e{j} = {xi} not in D(g⁻¹)"));
                }
            }
            Ok(bad)
        })?;
        r.sample_points.push(format!("arrow {g}"));
        inv_failures.extend(bad);
    }
    if inv_failures.is_empty() {
        r.pass("D(g)⁻¹ = D(g⁻¹)");
    } else {
        inv_failures.truncate(5);
        r.push("D(g)⁻¹ = D(g⁻¹)", crate::report::Status::Fail, inv_failures);
    }
    Ok(r)
}

/// Section `K: P → G` of the target with `s∘K` generically invertible.
#[derive(Clone, Debug)]
pub struct Bisection {
    pub label: String,
    pub map: SmoothMap,
}

impl Bisection {
    pub fn new(def: &GroupoidDef, map: SmoothMap, label: &str) -> Result<Self> {
        if map.source() != &def.base || map.target() != &def.total {
            return Err(Error::Schema(format!(
                "bisection `{label}` must map the base into the arrows"
            )));
        }
        if !def
            .tgt
            .compose(&map)?
            .same_as(&SmoothMap::identity(&def.base))
        {
            return Err(Error::NonInvertibleBisection(format!(
                "`{label}` is not a section of the target"
            )));
        }
        let sk = def.src.compose(&map)?;
        def.witness(|p| {
            let j = sk.jacobian_at(p)?;
            if rank(&j) < def.m() {
                return Err(Error::RankDeficientAtPoint(p.to_string()));
            }
            Ok(())
        })
        .map_err(|_| {
            Error::NonInvertibleBisection(format!("`{label}`: s∘K is singular at every witness"))
        })?;
        Ok(Bisection {
            label: label.to_string(),
            map,
        })
    }

    pub fn identity(def: &GroupoidDef) -> Self {
        Bisection {
            label: "unit".into(),
            map: def.unit.clone(),
        }
    }

    /// `(K⋆L)(p) = K(p) ⋆ L(s(K(p)))`.
    pub fn star(&self, def: &GroupoidDef, other: &Bisection) -> Result<Bisection> {
        let sk = def.src.compose(&self.map)?;
        let l_sk = other.map.compose(&sk)?;
        let comps = self
            .map
            .components()
            .iter()
            .chain(l_sk.components())
            .cloned()
            .collect();
        let pairing = SmoothMap::new(&def.base, &def.pair, comps)?;
        let map = def.mult.compose(&def.join.compose(&pairing)?)?;
        Ok(Bisection {
            label: format!("{}⋆{}", self.label, other.label),
            map,
        })
    }
}

/// `R_K(g) = g ⋆ K(s(g))`.
pub fn right_translation(def: &GroupoidDef, k: &Bisection) -> Result<SmoothMap> {
    let k_s = k.map.compose(&def.src)?;
    let pairing = def.pair_map(&SmoothMap::identity(&def.total), &k_s)?;
    Ok(def.mult.compose(&def.join.compose(&pairing)?)?)
}

/// Pullback `R_K^*` of a section: `(v, α)(R_K(g))` transported back to `g`.
pub fn pull_section_by(map: &SmoothMap, section: &PSection) -> Result<PVec<RF>> {
    let j = map.jacobian();
    let v = map.pull_column(&section.vector.components)?;
    let a = map.pull_column(section.oneform.components())?;
    let inv = crate::linalg::inverse(&j)
        .ok_or_else(|| Error::NonInvertibleBisection("R_K is not a local diffeomorphism".into()))?;
    Ok(PVec::new(inv.apply(&v), j.apply_transpose(&a)))
}

impl Chart {
    pub(crate) fn expect_chart(&self, other: &Chart) -> Result<()> {
        Ok(self.expect(other)?)
    }
}

fn chart(name: &str, coords: &[String]) -> Result<Chart> {
    Ok(Chart::new(name, coords)?)
}

/// Pair groupoid `M × M ⇉ M`, `(m, n) ⋆ (n, p) = (m, p)`, target the first factor.
pub fn pair_groupoid(m: &Chart) -> Result<GroupoidDef> {
    let names: Vec<String> = m.vars().iter().map(String::from).collect();
    let k = names.len();
    let with = |suffix: &str| {
        names
            .iter()
            .map(|v| format!("{v}{suffix}"))
            .collect::<Vec<_>>()
    };
    let (f1, f2, f3) = (with("1"), with("2"), with("3"));
    let total = chart(
        &format!("{0}x{0}", m.name()),
        &[f1.clone(), f2.clone()].concat(),
    )?;
    let composable = chart("C", &[f1.clone(), f2.clone(), f3.clone()].concat())?;
    let pair = pair_chart_of(&total)?;
    let txt = |v: &[String]| v.to_vec();
    let src = SmoothMap::parse(&total, m, &txt(&f2))?;
    let tgt = SmoothMap::parse(&total, m, &txt(&f1))?;
    let unit = SmoothMap::parse(m, &total, &[names.clone(), names.clone()].concat())?;
    let inv = SmoothMap::parse(&total, &total, &[f2.clone(), f1.clone()].concat())?;
    let pr1 = SmoothMap::parse(&composable, &total, &[f1.clone(), f2.clone()].concat())?;
    let pr2 = SmoothMap::parse(&composable, &total, &[f2.clone(), f3.clone()].concat())?;
    let mult = SmoothMap::parse(&composable, &total, &[f1.clone(), f3.clone()].concat())?;
    let g_part: Vec<String> = pair.vars().iter().take(2 * k).map(String::from).collect();
    let h_second: Vec<String> = pair.vars().iter().skip(3 * k).map(String::from).collect();
    let join = SmoothMap::parse(&pair, &composable, &[g_part, h_second].concat())?;
    GroupoidDef::new(GroupoidParts {
        name: format!("pair groupoid of {}", m.name()),
        total,
        base: m.clone(),
        composable,
        src,
        tgt,
        unit,
        inv,
        pr1,
        pr2,
        mult,
        join,
    })
}

/// Lie group over a point with composable chart `G × G` (coordinates `g_<v>`, `h_<v>`).
pub fn group_over_point<A: AsRef<str>, S: AsRef<str>>(
    name: &str,
    coords: &[A],
    mult: &[S],
    inverse: &[S],
    unit: &[S],
) -> Result<GroupoidDef> {
    let coords: Vec<String> = coords.iter().map(|c| c.as_ref().to_string()).collect();
    let total = chart(name, &coords)?;
    let base = Chart::new("pt", Vec::<String>::new())?;
    let pair = pair_chart_of(&total)?;
    let k = coords.len();
    let none: [&str; 0] = [];
    let g_part: Vec<String> = pair.vars().iter().take(k).map(String::from).collect();
    let h_part: Vec<String> = pair.vars().iter().skip(k).map(String::from).collect();
    GroupoidDef::new(GroupoidParts {
        name: name.to_string(),
        src: SmoothMap::parse(&total, &base, &none)?,
        tgt: SmoothMap::parse(&total, &base, &none)?,
        unit: SmoothMap::parse(&base, &total, unit)?,
        inv: SmoothMap::parse(&total, &total, inverse)?,
        pr1: SmoothMap::parse(&pair, &total, &g_part)?,
        pr2: SmoothMap::parse(&pair, &total, &h_part)?,
        mult: SmoothMap::parse(&pair, &total, mult)?,
        join: SmoothMap::identity(&pair),
        total,
        base,
        composable: pair,
    })
}

/// `(ℝᵏ, +)` over a point.
pub fn vector_group(coords: &[&str]) -> Result<GroupoidDef> {
    let mult: Vec<String> = coords.iter().map(|c| format!("g_{c} + h_{c}")).collect();
    let inv: Vec<String> = coords.iter().map(|c| format!("-{c}")).collect();
    let unit: Vec<String> = coords.iter().map(|_| "0".to_string()).collect();
    group_over_point("V", coords, &mult, &inv, &unit)
}

/// Affine group `(a, b) ⋆ (a', b') = (a a', a b' + b)`.
pub fn affine_group() -> Result<GroupoidDef> {
    group_over_point(
        "Aff",
        &["a", "b"],
        &["g_a*h_a", "g_a*h_b + g_b"],
        &["1/a", "-b/a"],
        &["1", "0"],
    )
}

/// `D_M ⊖ D_M` on the pair groupoid.
pub fn pair_dirac(dm: &DiracFrame) -> Result<(GroupoidDef, DiracFrame)> {
    let def = pair_groupoid(&dm.chart)?;
    let k = dm.chart.dim();
    let z = def.total.zeros(k);
    let mut sections = Vec::with_capacity(2 * k);
    for s in &dm.sections {
        let v = def.tgt.pull_column(&s.vector.components)?;
        let a = def.tgt.pull_column(s.oneform.components())?;
        sections.push(PSection::from_columns(
            &def.total,
            PVec::new([v, z.clone()].concat(), [a, z.clone()].concat()),
        )?);
    }
    for s in &dm.sections {
        let v: Vec<RF> = def
            .src
            .pull_column(&s.vector.components)?
            .into_iter()
            .map(|c| -c)
            .collect();
        let a = def.src.pull_column(s.oneform.components())?;
        sections.push(PSection::from_columns(
            &def.total,
            PVec::new([z.clone(), v].concat(), [z.clone(), a].concat()),
        )?);
    }
    let frame = DiracFrame::new(&def.total, sections, &format!("pair Dirac of {}", dm.label))?;
    Ok((def, frame))
}

/// Evaluates a column along a map at a point.
pub fn column_at(col: &[RF], p: &PointP) -> Result<Vec<Q>> {
    Ok(eval_vec(col, &p.coords)?)
}
