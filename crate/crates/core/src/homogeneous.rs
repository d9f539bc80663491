//! Dirac homogeneous spaces from Lagrangian data along the units.

use crate::bcourant::{bisection_action_at, BFrame, BisectionAction};
use crate::dirac::{courant_tensor, DiracFrame, PSection, PVec};
use crate::error::{Error, Result};
use crate::expr::Q;
use crate::geometry::{eval_matrix, RF};
use crate::groupoid::{frame_at, right_translation, Bisection, GroupoidDef};
use crate::infinitesimal::{
    invariant_extension, orthogonal_to_all, span_contains, stack_matrix, Side, UnitColumn,
};
use crate::linalg::{independent_subset, rank, solve};
use crate::report::{Report, Status};
use crate::sampling::Sampler;

/// Wide subgroupoid `H` given by its algebroid and finitely many bisections.
#[derive(Clone, Debug)]
pub struct SubgroupoidData {
    /// Columns of `AH ⊆ ker Tt|_P`, in base coordinates.
    pub algebroid: Vec<Vec<RF>>,
    pub generators: Vec<Bisection>,
}

impl SubgroupoidData {
    pub fn new(def: &GroupoidDef, algebroid: Vec<Vec<RF>>, generators: Vec<Bisection>) -> Result<Self> {
        for (i, x) in algebroid.iter().enumerate() {
            if x.len() != def.n() || def.calc.jt_units.apply(x).iter().any(|c| !c.is_zero()) {
                return Err(Error::WrongKernel(format!("AH generator {i} is not in ker Tt along the units")));
            }
        }
        Ok(SubgroupoidData { algebroid, generators })
    }

    /// `H = P`.
    pub fn units_only(def: &GroupoidDef) -> Self {
        SubgroupoidData {
            algebroid: Vec::new(),
            generators: vec![Bisection::identity(def)],
        }
    }
}

/// Lagrangian subbundle `𝔇` of `𝖯_G|_P`.
#[derive(Clone, Debug)]
pub struct UnitDirac {
    pub gens: Vec<UnitColumn>,
}

impl UnitDirac {
    pub fn new(def: &GroupoidDef, gens: Vec<UnitColumn>) -> Result<Self> {
        let n = def.n();
        if gens.len() != n {
            return Err(Error::NotLagrangian(format!("{} generators for rank {n}", gens.len())));
        }
        for i in 0..n {
            for j in i..n {
                if !gens[i].pairing(&gens[j]).is_zero() {
                    return Err(Error::NotLagrangian(format!("<d{i}, d{j}> = {}", gens[i].pairing(&gens[j]))));
                }
            }
        }
        if rank(&stack_matrix(&gens, 2 * n, &def.base.zero())) < n {
            return Err(Error::NotLagrangian("generators are dependent".into()));
        }
        Ok(UnitDirac { gens })
    }

    /// `𝔇 = Iˢ ⊕ 𝔄`, the datum of `G` itself.
    pub fn of_groupoid(b: &BFrame) -> Result<Self> {
        let mut gens = b.inf.s_core.clone();
        gens.extend(b.inf.units.iter().cloned());
        UnitDirac::new(b.def(), gens)
    }

    pub fn contains(&self, x: &UnitColumn) -> bool {
        orthogonal_to_all(&self.gens, x).is_none()
    }
}

fn vector_only(def: &GroupoidDef, x: &[RF]) -> UnitColumn {
    PVec::new(x.to_vec(), def.base.zeros(def.n()))
}

/// `Iˢ ⊆ 𝔇 ⊆ 𝔄 ⊕ ker𝕋t|_P` and `AH × {0} ⊆ 𝔇`.
pub fn check_sandwich(b: &BFrame, d: &UnitDirac, h: &SubgroupoidData) -> Result<Report> {
    let mut r = Report::new("sandwich");
    let pz = b.def().base.zero();
    let bad = b.inf.s_core.iter().position(|c| !span_contains(&d.gens, c, &pz));
    r.record("Is ⊆ 𝔇", bad.is_none(), || format!("core generator {} = {}", bad.unwrap_or(0), b.inf.s_core[bad.unwrap_or(0)]));
    let mut outer = b.inf.units.clone();
    outer.extend(b.ker_t.iter().cloned());
    let bad = d.gens.iter().position(|x| !span_contains(&outer, x, &pz));
    r.record("𝔇 ⊆ 𝔄 ⊕ ker𝕋t", bad.is_none(), || format!("generator d{} = {}", bad.unwrap_or(0), d.gens[bad.unwrap_or(0)]));
    let bad = h.algebroid.iter().position(|x| !span_contains(&d.gens, &vector_only(b.def(), x), &pz));
    r.record("AH × 0 ⊆ 𝔇", bad.is_none(), || format!("AH generator {}", bad.unwrap_or(0)));
    Ok(r)
}

/// Spanning sections `ξ + σ^l` for generators of `𝔇`, plus right extensions of `Iˢ`.
pub fn build_homogeneous(b: &BFrame, d: &UnitDirac) -> Result<DiracFrame> {
    let def = b.def();
    let n = def.n();
    let mut cols = d.gens.iter().map(|x| b.lift(x)).collect::<Result<Vec<_>>>()?;
    for c in &b.inf.s_core {
        cols.push(invariant_extension(def, c, Side::Right)?);
    }
    let stacked: Vec<Vec<RF>> = cols.iter().map(|c| c.stacked()).collect();
    let chosen = independent_subset(&stacked, &def.total.zero());
    if chosen.len() != n {
        return Err(Error::NotLagrangian(format!("the extensions span rank {} instead of {n}", chosen.len())));
    }
    let sections = chosen
        .into_iter()
        .map(|i| PSection::from_columns(&def.total, cols[i].clone()))
        .collect::<Result<Vec<_>>>()?;
    let frame = DiracFrame::new(&def.total, sections, "homogeneous")?;
    if let Some((i, j, v)) = frame.isotropy_defect()? {
        return Err(Error::NotLagrangian(format!("<e{i}, e{j}> = {v}")));
    }
    Ok(frame)
}

/// `𝔇 = D|_P`.
pub fn check_restriction(b: &BFrame, built: &DiracFrame, d: &UnitDirac) -> Result<Report> {
    let def = b.def();
    let mut r = Report::new("restriction");
    let restricted = def.restrict_columns(&built.columns())?;
    let bad = d.gens.iter().position(|x| orthogonal_to_all(&restricted, x).is_some());
    r.record("𝔇 ⊆ D|P", bad.is_none(), || format!("generator d{}", bad.unwrap_or(0)));
    let at = eval_matrix(&stack_matrix(&restricted, 2 * def.n(), &def.base.zero()), &b.inf.witness.coords)?;
    r.record("rank D|P = rank 𝔇", rank(&at) == def.n(), || format!("rank {} at {}", rank(&at), b.inf.witness));
    let cols = built.columns();
    let bad = b
        .inf
        .s_core
        .iter()
        .map(|c| invariant_extension(def, c, Side::Right))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .position(|x| orthogonal_to_all(&cols, x).is_some());
    r.record("D_G ∩ ker𝕋s ⊆ D", bad.is_none(), || format!("core generator {}", bad.unwrap_or(0)));
    Ok(r)
}

/// `ρ_K(𝔇) ⊆ 𝔇` for the generating bisections of `H`, at sampled base points.
pub fn check_bisection_invariance(
    b: &BFrame,
    d: &UnitDirac,
    h: &SubgroupoidData,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let def = b.def();
    let mut r = Report::new("bisection-invariance");
    r.seed = Some(seed);
    let actions = h
        .generators
        .iter()
        .map(|k| BisectionAction::new(def, k))
        .collect::<Result<Vec<_>>>()?;
    let mut sampler = Sampler::new(seed);
    let mut bad = Vec::new();
    for _ in 0..samples {
        let (p, found) = sampler.point_where(&def.base, |p| {
            let mut found = Vec::new();
            for a in &actions {
                for (i, x) in d.gens.iter().enumerate() {
                    let e = x.evaluate_at(&p.coords)?;
                    let out = bisection_action_at(b, a, p, &e)?;
                    let here = d.gens.iter().map(|g| g.evaluate_at(&out.point.coords)).collect::<Result<Vec<_>>>()?;
                    if let Some(j) = here.iter().position(|g| g.pairing(&out.value) != Q::from_integer(0.into())) {
                        found.push(format!(
                            "K = {}, p = {p}: ρ_K(d{i}) = {} at {} pairs with d{j}",
                            a.bisection.label, out.value, out.point
                        ));
                    }
                }
            }
            Ok(found)
        })?;
        r.sample_points.push(p.to_string());
        bad.extend(found);
    }
    if bad.is_empty() {
        r.pass("𝔇 is invariant under the bisections of H");
    } else {
        bad.truncate(5);
        r.push("𝔇 is invariant under the bisections of H", Status::Fail, bad);
    }
    Ok(r)
}

/// Closedness of `D` computed directly and through the bracket on `𝔅`.
pub fn check_closed_equivalence(b: &BFrame, built: &DiracFrame, d: &UnitDirac) -> Result<Report> {
    let mut r = Report::new("closed-equivalence");
    let tensor = courant_tensor(built)?;
    let direct = tensor.closed;
    let mut failure = None;
    'outer: for i in 0..d.gens.len() {
        for j in (i + 1)..d.gens.len() {
            let br = b.b_bracket(&d.gens[i], &d.gens[j])?;
            if !d.contains(&br) {
                failure = Some(format!("[d{i}, d{j}] = {br}"));
                break 'outer;
            }
        }
    }
    let via_b = failure.is_none();
    r.note(format!(
        "Courant tensor of D: {}; 𝔇/Is bracket-closed: {}",
        if direct { "closed" } else { "not closed" },
        if via_b { "yes" } else { "no" }
    ));
    if let Some((i, j, k, v)) = tensor.first_nonzero() {
        r.note(format!("T(e{i}, e{j}, e{k}) = {v}"));
    }
    if let Some(w) = &failure {
        r.note(w.clone());
    }
    r.record("verdicts agree", direct == via_b, || format!("tensor {direct}, bracket {via_b}"));
    let name = "D is closed";
    if direct {
        r.pass(name);
    } else {
        r.push(name, Status::Fail, vec![failure.unwrap_or_else(|| "Courant tensor nonzero".into())]);
    }
    Ok(r)
}

/// `R_K` maps `D` to itself for the generators of `H`, at sampled arrows.
fn check_reduction(b: &BFrame, built: &DiracFrame, h: &SubgroupoidData, samples: usize, seed: u64) -> Result<Report> {
    let def = b.def();
    let mut r = Report::new("reduction");
    let maps = h
        .generators
        .iter()
        .map(|k| Ok((k.label.clone(), right_translation(def, k)?)))
        .collect::<Result<Vec<_>>>()?;
    let jacs: Vec<_> = maps.iter().map(|(_, m)| m.jacobian()).collect();
    let mut sampler = Sampler::new(seed);
    let mut bad = Vec::new();
    for _ in 0..samples {
        let (g, found) = sampler.point_where(&def.total, |g| {
            let fg = frame_at(built, g)?;
            let mut found = Vec::new();
            for ((label, map), jac) in maps.iter().zip(&jacs) {
                let target = map.apply_at(g)?;
                let ft = frame_at(built, &target)?;
                let j = eval_matrix(jac, &g.coords)?;
                for c in 0..fg.cols() {
                    let x = PVec::from_stacked(&fg.col(c));
                    let cov = solve(&j.transpose(), &x.covector)
                        .ok_or_else(|| Error::NonInvertibleBisection(format!("R_{label} at {g}")))?;
                    let y = PVec::new(j.apply(&x.vector), cov.particular);
                    let zero = Q::from_integer(0.into());
                    if (0..ft.cols()).any(|k| PVec::from_stacked(&ft.col(k)).pairing(&y) != zero) {
                        found.push(format!("K = {label}: image of e{c} leaves D"));
                    }
                }
            }
            Ok(found)
        })?;
        r.sample_points.push(g.to_string());
        bad.extend(found.into_iter().map(|w| format!("g = {g}: {w}")));
    }
    if bad.is_empty() {
        r.pass("R_K preserves D (sampled)");
    } else {
        bad.truncate(5);
        r.push("R_K preserves D (sampled)", Status::Fail, bad);
    }
    Ok(r)
}

/// Full pipeline; the verdict is the last note.
pub fn drinfeld_classify(b: &BFrame, h: &SubgroupoidData, d: &UnitDirac, samples: usize, seed: u64) -> Result<Report> {
    let def = b.def();
    let mut r = Report::new("classify");
    r.seed = Some(seed);
    r.note("H is assumed t-connected");
    let sandwich = check_sandwich(b, d, h)?;
    let ok = sandwich.passed();
    r.absorb("sandwich", sandwich);
    if !ok {
        r.note("verdict: not a homogeneous datum (sandwich condition fails)");
        return Ok(r);
    }
    let built = build_homogeneous(b, d)?;
    r.absorb("restriction", check_restriction(b, &built, d)?);
    let cols = built.columns();
    let bad = h
        .algebroid
        .iter()
        .map(|x| invariant_extension(def, &vector_only(def, x), Side::Left))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .position(|x| orthogonal_to_all(&cols, x).is_some());
    r.record("K_H = AH^l × 0 ⊆ D", bad.is_none(), || format!("AH generator {}", bad.unwrap_or(0)));
    // rebuilding from D|_P gives the same structure
    let again = UnitDirac::new(def, {
        let restricted = def.restrict_columns(&cols)?;
        let idx = independent_subset(
            &restricted.iter().map(|c| c.stacked()).collect::<Vec<_>>(),
            &def.base.zero(),
        );
        idx.into_iter().map(|i| restricted[i].clone()).collect()
    })?;
    let rebuilt = build_homogeneous(b, &again)?;
    let same = rebuilt.columns().iter().all(|x| orthogonal_to_all(&cols, x).is_none());
    r.record("uniqueness: rebuilding from D|P reproduces D", same, || "spans differ".into());
    let invariance = check_bisection_invariance(b, d, h, samples, seed)?;
    let invariant = invariance.passed();
    r.sample_points.extend(invariance.sample_points.iter().cloned());
    r.absorb("", invariance);
    if invariant {
        let red = check_reduction(b, &built, h, samples.min(5), seed)?;
        r.sample_points.extend(red.sample_points.iter().cloned());
        r.absorb("", red);
    }
    let closed = if b.closed {
        let c = check_closed_equivalence(b, &built, d)?;
        let agree = c.check("verdicts agree").is_some_and(|x| x.status == Status::Pass);
        let closed = c.check("D is closed").is_some_and(|x| x.status == Status::Pass);
        for n in &c.notes {
            r.note(n.clone());
        }
        r.record("closedness verdicts agree", agree, || "direct and bracket verdicts differ".into());
        Some(closed)
    } else {
        r.not_applicable("closedness verdicts agree", "D_G is not closed");
        None
    };
    let verdict = match (invariant, closed) {
        (false, _) => "not a homogeneous datum (not invariant under the bisections of H)".to_string(),
        (true, Some(true)) => "Dirac homogeneous space with closed Dirac structure".to_string(),
        (true, Some(false)) => "Dirac homogeneous space; the Dirac structure is not closed".to_string(),
        (true, None) => "Dirac homogeneous space (closedness not decided)".to_string(),
    };
    r.note(format!("verdict: {verdict}"));
    r.note(format!("D frame: {}", built.sections.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("; ")));
    Ok(r)
}
