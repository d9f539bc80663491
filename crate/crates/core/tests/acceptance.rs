//! Acceptance criteria 1-10; prints one verdict line per criterion.
//!
//! Every comparison is exact (rational arithmetic, symbolic identity); there are no numeric tolerances.

use std::path::Path;

use dirac_groupoids::bcourant::{
    algebroid_frames, bisection_action_at, build_b, check_b_axioms, check_bisection_action, iso_pair,
    iso_poisson, iso_presymplectic, pair_injection, psi, test_functions, BisectionAction,
};
use dirac_groupoids::dirac::{
    check_courant_axioms, courant_tensor, from_bivector, from_two_form, Bivector, DiracFrame, PSection, PVec,
    Pontryagin,
};
use dirac_groupoids::document::{load, Loaded};
use dirac_groupoids::expr::Q;
use dirac_groupoids::geometry::{Chart, KForm, PointP, RF};
use dirac_groupoids::groupoid::{check_dirac_multiplicative, pair_dirac, Bisection, GroupoidDef};
use dirac_groupoids::homogeneous::{build_homogeneous, drinfeld_classify, UnitDirac};
use dirac_groupoids::infinitesimal::{span_contains, Infinitesimal};
use dirac_groupoids::report::{Report, Status};
use dirac_groupoids::sampling::Sampler;

/// Sample count demanded for the sampled multiplicativity and action checks.
const SAMPLES: usize = 25;
const SEED: u64 = 20_240_611;

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn corpus(name: &str) -> Loaded {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.json"));
    load(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn plane() -> Chart {
    Chart::new("M", ["x", "y"]).unwrap()
}

fn passed(label: &str, r: &Report) -> Result<(), String> {
    if r.passed() {
        Ok(())
    } else {
        Err(format!("{label}:\n{}", r.to_text()))
    }
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn span_equal(a: &[PVec<RF>], b: &[PVec<RF>], zero: &RF) -> bool {
    a.iter().all(|x| span_contains(b, x, zero)) && b.iter().all(|x| span_contains(a, x, zero))
}

/// Lagrangian frames agree iff one is isotropic against the other.
fn same_lagrangian(a: &DiracFrame, b: &DiracFrame) -> bool {
    let bc = b.columns();
    a.columns().iter().all(|x| bc.iter().all(|y| x.pairing(y).is_zero()))
}

fn column(c: &Chart, v: &[&str], a: &[&str]) -> PVec<RF> {
    PVec::new(v.iter().map(|s| c.parse(s).unwrap()).collect(), a.iter().map(|s| c.parse(s).unwrap()).collect())
}

fn criterion_1() -> Outcome {
    let chart = Chart::new("R3", ["x", "y", "z"]).unwrap();
    let mut s = Sampler::new(SEED);
    let elems: Vec<PSection> = (0..3)
        .map(|_| {
            let v = (0..3).map(|_| s.polynomial(&chart, 2)).collect();
            let a = (0..3).map(|_| s.polynomial(&chart, 2)).collect();
            PSection::from_columns(&chart, PVec::new(v, a)).unwrap()
        })
        .collect();
    let r = check_courant_axioms(&Pontryagin { chart: chart.clone() }, &elems, &test_functions(&chart, SEED))
        .map_err(|e| e.to_string())?;
    passed("Pontryagin axioms", &r)?;
    Ok(format!("{} identities on 3 random degree-2 sections of P_R3", r.checks.len()))
}

fn criterion_2() -> Outcome {
    let m = plane();
    let pi = Bivector::from_entries(&m, vec![((0, 1), m.parse("x").unwrap())]).unwrap();
    let (def, frame) = pair_dirac(&from_bivector(&pi)).unwrap();
    let r = check_dirac_multiplicative(&def, &frame, SAMPLES, SEED).map_err(|e| e.to_string())?;
    passed("multiplicativity", &r)?;
    ensure(r.sample_points.len() >= SAMPLES, || "fewer than 25 composable pairs".into())?;
    // cotangent groupoid identities at random covectors
    let mut s = Sampler::new(SEED + 1);
    for _ in 0..5 {
        let pts: Vec<Vec<Q>> = (0..3).map(|_| s.point(&m).coords).collect();
        let cov: Vec<Vec<Q>> = (0..3).map(|_| s.point(&m).coords).collect();
        let (mm, nn, pp) = (&pts[0], &pts[1], &pts[2]);
        let (am, an, ap) = (&cov[0], &cov[1], &cov[2]);
        let neg = |v: &[Q]| v.iter().map(|c| -c).collect::<Vec<_>>();
        let g = PointP::new(&def.total, [mm.clone(), nn.clone()].concat()).unwrap();
        let h = PointP::new(&def.total, [nn.clone(), pp.clone()].concat()).unwrap();
        let hat_t = def.hat_t_at(&g, &[am.clone(), an.clone()].concat()).map_err(|e| e.to_string())?;
        ensure(hat_t == [am.clone(), neg(am)].concat(), || format!("t̂(α_m, α_n) = {hat_t:?}"))?;
        let prod = def
            .cotangent_mult_at(&g, &h, &[am.clone(), an.clone()].concat(), &[neg(an), ap.clone()].concat())
            .map_err(|e| e.to_string())?;
        ensure(prod == [am.clone(), ap.clone()].concat(), || format!("(α_m, α_n) ⋆ (−α_n, α_p) = {prod:?}"))?;
    }
    Ok(format!("{} sampled points; t̂ and cotangent product exact at 5 random covector triples", r.sample_points.len()))
}

fn criterion_3() -> Outcome {
    // pair case, any D_M: 𝔄 = {(v, v, α, −α)}, Is = {(v, 0, α, 0)}
    let m = plane();
    for base in [
        from_bivector(&Bivector::from_entries(&m, vec![((0, 1), m.parse("x").unwrap())]).unwrap()),
        from_two_form(&KForm::from_entries(&m, 2, vec![(vec![0, 1], m.parse("x*y + 1").unwrap())]).unwrap()).unwrap(),
    ] {
        let (def, frame) = pair_dirac(&base).unwrap();
        let inf = Infinitesimal::new(&def, &frame).map_err(|e| e.to_string())?;
        let z = m.zero();
        let units: Vec<PVec<RF>> = base
            .columns()
            .iter()
            .map(|c| {
                let neg: Vec<RF> = c.covector.iter().map(|a| -a.clone()).collect();
                PVec::new([c.vector.clone(), c.vector.clone()].concat(), [c.covector.clone(), neg].concat())
            })
            .collect();
        let core: Vec<PVec<RF>> = base
            .columns()
            .iter()
            .map(|c| {
                let zs = m.zeros(2);
                PVec::new([c.vector.clone(), zs.clone()].concat(), [c.covector.clone(), zs].concat())
            })
            .collect();
        ensure(span_equal(&inf.units, &units, &z), || format!("𝔄 = {:?}", inf.units))?;
        ensure(span_equal(&inf.s_core, &core, &z), || format!("Is = {:?}", inf.s_core))?;
    }
    // Poisson case: 𝔄 = graph(π♯ on A*G)
    let mut cases = vec![corpus("poisson-group"), corpus("pair-poisson")];
    let mut checked = 0;
    for doc in cases.drain(..) {
        let def = &doc.def;
        let pi = doc.bivector.clone().unwrap();
        let inf = Infinitesimal::new(def, &doc.frame).map_err(|e| e.to_string())?;
        let (_, dual) = algebroid_frames(def);
        let n = def.n();
        // π_ij along the units, computed here rather than through Ψ
        let along: Vec<Vec<RF>> = (0..n)
            .map(|i| (0..n).map(|j| def.unit.pull_function(&pi.get(i, j)).unwrap()).collect())
            .collect();
        let graph: Vec<PVec<RF>> = dual
            .iter()
            .map(|xi| {
                // π♯ξ = π(ξ, ·)
                let v = (0..n)
                    .map(|j| (0..n).fold(def.base.zero(), |acc, i| acc + &xi[i] * &along[i][j]))
                    .collect();
                PVec::new(v, xi.clone())
            })
            .collect();
        ensure(span_equal(&inf.units, &graph, &def.base.zero()), || format!("{}: 𝔄 = {:?}", def.name, inf.units))?;
        checked += 1;
    }
    Ok(format!("pair 𝔄 and Is closed forms for two D_M; Poisson graph form for {checked} Poisson groupoids"))
}

/// `{f, g} = Σ π_ij ∂_i f ∂_j g`.
fn poisson_bracket(pi: &[[RF; 2]; 2], f: &RF, g: &RF) -> RF {
    let mut acc = RF::zero(f.vars());
    for i in 0..2 {
        for j in 0..2 {
            acc = acc + &(&pi[i][j] * &f.derivative(i)) * &g.derivative(j);
        }
    }
    acc
}

fn criterion_4() -> Outcome {
    let doc = corpus("poisson-group");
    let def = &doc.def;
    let inf = Infinitesimal::new(def, &doc.frame).map_err(|e| e.to_string())?;
    // Koszul oracle: [dx_i, dx_j] = d{x_i, x_j}, linearized at the identity
    let g = &def.total;
    let x = g.parse("x").unwrap();
    let zero = g.zero();
    let pi = [[zero.clone(), x.clone()], [-x.clone(), zero.clone()]];
    let coords = [g.coordinate(0), g.coordinate(1)];
    let origin = [q(0, 1), q(0, 1)];
    let p = &def.base;
    for i in 0..2 {
        for j in 0..2 {
            let bracket = poisson_bracket(&pi, &coords[i], &coords[j]);
            let expected: Vec<RF> = (0..2)
                .map(|k| p.constant(bracket.derivative(k).evaluate_at(&origin).unwrap()))
                .collect();
            let unit = |k: usize| {
                let mut a = p.zeros(2);
                a[k] = p.one();
                PVec::new(p.zeros(2), a)
            };
            let got = inf.star_bracket(&unit(i), &unit(j)).map_err(|e| e.to_string())?;
            let want = PVec::new(p.zeros(2), expected);
            ensure(got == want, || format!("[dx{i}, dx{j}]_⋆ = {got}, Koszul oracle {want}"))?;
        }
    }
    let got = inf
        .star_bracket(&column(p, &["0", "0"], &["1", "0"]), &column(p, &["0", "0"], &["0", "1"]))
        .map_err(|e| e.to_string())?;
    ensure(got == column(p, &["0", "0"], &["1", "0"]), || format!("[dx, dy] = {got}"))?;
    Ok("[dx, dy]_⋆ = dx and all basis brackets match the Koszul oracle".into())
}

fn integrability_verdict(def: &GroupoidDef, frame: &DiracFrame) -> Result<(bool, bool), String> {
    let inf = Infinitesimal::new(def, frame).map_err(|e| e.to_string())?;
    let r = inf.integrability_criterion().map_err(|e| e.to_string())?;
    let agree = r.check("criterion agrees with the Courant tensor").map(|c| c.status) == Some(Status::Pass);
    let tensor = courant_tensor(frame).map_err(|e| e.to_string())?.closed;
    Ok((agree, tensor))
}

fn criterion_5() -> Outcome {
    let closed_pair = corpus("pair-poisson");
    let open_pair = corpus("fail-pair-not-closed");
    let poisson = corpus("poisson-group");
    let mut verdicts = Vec::new();
    for (label, doc, expect) in [("closed pair", &closed_pair, true), ("x dy∧dz pair", &open_pair, false), ("Poisson", &poisson, true)] {
        let (agree, closed) = integrability_verdict(&doc.def, &doc.frame)?;
        ensure(agree, || format!("{label}: criterion and tensor disagree"))?;
        ensure(closed == expect, || format!("{label}: expected closed = {expect}"))?;
        verdicts.push(format!("{label} {}", if closed { "closed" } else { "not closed" }));
    }
    Ok(format!("verdicts agree ({})", verdicts.join(", ")))
}

const FAMILIES: [&str; 4] = ["pair-poisson", "pair-presymplectic", "action-groupoid", "poisson-group"];

fn criterion_6() -> Outcome {
    let mut ranks = Vec::new();
    for name in FAMILIES {
        let doc = corpus(name);
        let b = build_b(&doc.def, &doc.frame).map_err(|e| e.to_string())?;
        passed(name, &b.report().map_err(|e| e.to_string())?)?;
        passed(name, &check_b_axioms(&b, &test_functions(&doc.def.base, SEED)).map_err(|e| e.to_string())?)?;
        let (n, r) = (doc.def.n(), doc.def.m());
        // 2n − 2r; equals 2 dim P exactly when rank AG = dim P
        ensure(b.rank() == 2 * n - 2 * r, || format!("{name}: rank 𝔅 = {} ≠ 2n − 2r = {}", b.rank(), 2 * n - 2 * r))?;
        ranks.push(format!("{name} {} (2 dim P = {})", b.rank(), 2 * r));
    }
    Ok(format!("axioms hold; rank 𝔅 = 2 rank AG: {}", ranks.join(", ")))
}

/// Bracket of the Lie bialgebra double `𝔤 ⋈ 𝔤*` for abelian `𝔤` and `[ξ_i, ξ_j] = Σ c_ijk ξ_k` on `𝔤*`.
fn double_bracket(c: &[[[Q; 2]; 2]; 2], x: &([Q; 2], [Q; 2]), y: &([Q; 2], [Q; 2])) -> ([Q; 2], [Q; 2]) {
    let zero = q(0, 1);
    let mut v = [zero.clone(), zero.clone()];
    let mut a = [zero.clone(), zero.clone()];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                // [ξ, η] on 𝔤*
                a[k] += &x.1[i] * &y.1[j] * &c[i][j][k];
                // [X, η] = −ad*_η X with ⟨ad*_η X, ζ⟩ = −⟨X, [η, ζ]⟩, and [ξ, Y] = ad*_ξ Y
                v[j] += &x.0[k] * &y.1[i] * &c[i][j][k];
                v[j] -= &y.0[k] * &x.1[i] * &c[i][j][k];
            }
        }
    }
    (v, a)
}

fn criterion_7() -> Outcome {
    // Π does not see D_M
    let m = plane();
    let bases = [
        from_bivector(&Bivector::from_entries(&m, vec![((0, 1), m.parse("x").unwrap())]).unwrap()),
        from_bivector(&Bivector::from_entries(&m, vec![((0, 1), m.parse("x^2 + y").unwrap())]).unwrap()),
        from_two_form(&KForm::from_entries(&m, 2, vec![(vec![0, 1], m.parse("1 + y^2").unwrap())]).unwrap()).unwrap(),
    ];
    for base in &bases {
        let (def, frame) = pair_dirac(base).unwrap();
        let b = build_b(&def, &frame).map_err(|e| e.to_string())?;
        passed(&base.label, &iso_pair(&b, &test_functions(&m, SEED)).map_err(|e| e.to_string())?)?;
    }
    // Λ on the two 2-form examples
    for name in ["pair-presymplectic", "action-groupoid"] {
        let doc = corpus(name);
        let b = build_b(&doc.def, &doc.frame).map_err(|e| e.to_string())?;
        let omega = doc.two_form.clone().unwrap();
        passed(name, &iso_presymplectic(&b, &omega, &test_functions(&doc.def.base, SEED)).map_err(|e| e.to_string())?)?;
    }
    // Ψ on a basis of 𝔤 ⊕ 𝔤* against the bialgebra double
    let doc = corpus("poisson-group");
    let b = build_b(&doc.def, &doc.frame).map_err(|e| e.to_string())?;
    let pi = doc.bivector.clone().unwrap();
    passed("Ψ", &iso_poisson(&b, &pi).map_err(|e| e.to_string())?)?;
    let (z, o) = (q(0, 1), q(1, 1));
    // [dx, dy] = dx, from the Koszul oracle of criterion 4
    let mut c = [[[z.clone(), z.clone()], [z.clone(), z.clone()]], [[z.clone(), z.clone()], [z.clone(), z.clone()]]];
    c[0][1][0] = o.clone();
    c[1][0][0] = -o.clone();
    let basis: Vec<([Q; 2], [Q; 2])> = vec![
        ([o.clone(), z.clone()], [z.clone(), z.clone()]),
        ([z.clone(), o.clone()], [z.clone(), z.clone()]),
        ([z.clone(), z.clone()], [o.clone(), z.clone()]),
        ([z.clone(), z.clone()], [z.clone(), o.clone()]),
    ];
    let p = &doc.def.base;
    let lift = |e: &([Q; 2], [Q; 2])| {
        let f = |v: &[Q; 2]| v.iter().map(|c| p.constant(c.clone())).collect::<Vec<_>>();
        psi(&b, &pi, &f(&e.0), &f(&e.1)).unwrap()
    };
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let got = b.b_bracket(&lift(x), &lift(y)).map_err(|e| e.to_string())?;
            let want = lift(&double_bracket(&c, x, y));
            ensure(b.equal_mod_core(&got, &want), || format!("basis {i}, {j}: Ψ-bracket {got}, double {want}"))?;
        }
    }
    Ok("Π for 3 choices of D_M, Λ for 2 two-forms, Ψ on all 16 basis pairs".into())
}

fn criterion_8() -> Outcome {
    let mut counts = Vec::new();
    for name in FAMILIES {
        let doc = corpus(name);
        let b = build_b(&doc.def, &doc.frame).map_err(|e| e.to_string())?;
        let mut list = vec![Bisection::identity(&doc.def)];
        list.extend(doc.bisections.iter().cloned());
        let r = check_bisection_action(&b, &list, SAMPLES, SEED).map_err(|e| e.to_string())?;
        passed(name, &r)?;
        ensure(r.sample_points.len() == SAMPLES, || format!("{name}: {} points", r.sample_points.len()))?;
        counts.push(format!("{name} {}", list.len()));
    }
    // closed form on the pair groupoid: Π ρ_K Π⁻¹ = φ_* with K(p) = (p, φ(p))
    let doc = corpus("pair-presymplectic");
    let def = &doc.def;
    let b = build_b(def, &doc.frame).map_err(|e| e.to_string())?;
    let cubic = doc.bisections.iter().find(|k| k.label == "cubic").unwrap();
    let action = BisectionAction::new(def, cubic).map_err(|e| e.to_string())?;
    let m = &def.base;
    let at = |x: Q, y: Q, w: [Q; 2], beta: [Q; 2]| -> Result<(PointP, PVec<Q>), String> {
        let p = PointP::new(m, vec![x, y]).unwrap();
        let e = pair_injection(&b, &PSection::from_columns(m, PVec::new(
            w.iter().map(|c| m.constant(c.clone())).collect(),
            beta.iter().map(|c| m.constant(c.clone())).collect(),
        )).unwrap()).unwrap().evaluate_at(&p.coords).unwrap();
        let out = bisection_action_at(&b, &action, &p, &e).map_err(|e| e.to_string())?;
        Ok((out.point, out.value))
    };
    let (qpt, value) = at(q(1, 1), q(0, 1), [q(5, 1), q(7, 1)], [q(8, 1), q(3, 1)])?;
    ensure(qpt.coords == vec![q(2, 1), q(0, 1)], || format!("lands at {qpt}"))?;
    let z = q(0, 1);
    let want = PVec::new(vec![z.clone(), z.clone(), q(20, 1), q(7, 1)], vec![z.clone(), z.clone(), q(2, 1), q(3, 1)]);
    ensure(b.equal_mod_core_at(&qpt, &value, &want).map_err(|e| e.to_string())?, || format!("ρ_K = {value}, want {want}"))?;
    // and at random points, with φ' = 3x² + 1 computed here
    let mut s = Sampler::new(SEED);
    for _ in 0..5 {
        let (x, y) = (s.rational(), s.rational());
        let (w, beta) = ([s.rational(), s.rational()], [s.rational(), s.rational()]);
        let d = q(3, 1) * &x * &x + q(1, 1);
        let (qpt, value) = at(x.clone(), y.clone(), w.clone(), beta.clone())?;
        ensure(qpt.coords == vec![&x * &x * &x + &x, y.clone()], || format!("lands at {qpt}"))?;
        let want = PVec::new(
            vec![z.clone(), z.clone(), &d * &w[0], w[1].clone()],
            vec![z.clone(), z.clone(), &beta[0] / &d, beta[1].clone()],
        );
        ensure(b.equal_mod_core_at(&qpt, &value, &want).map_err(|e| e.to_string())?, || format!("ρ_K = {value}, want {want}"))?;
    }
    Ok(format!("25 points per family ({}); φ = x³ + x: (5, 7; 8, 3) at (1, 0) ↦ (20, 7; 2, 3) at (2, 0)", counts.join(", ")))
}

fn criterion_9() -> Outcome {
    // (a) 𝔇 = Is ⊕ 𝔄 rebuilds D_G
    for name in ["pair-poisson", "pair-presymplectic", "poisson-group"] {
        let doc = corpus(name);
        let b = build_b(&doc.def, &doc.frame).map_err(|e| e.to_string())?;
        let built = build_homogeneous(&b, &UnitDirac::of_groupoid(&b).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(same_lagrangian(&built, &doc.frame), || format!("{name}: rebuilt frame differs from D_G"))?;
    }
    // (b) translation quotient, and its x-dependent perturbation
    let classify = |doc: &Loaded| -> Result<Report, String> {
        let b = build_b(&doc.def, &doc.frame).map_err(|e| e.to_string())?;
        let h = doc.subgroupoid().map_err(|e| e.to_string())?;
        let d = doc.unit_dirac().map_err(|e| e.to_string())?.unwrap();
        drinfeld_classify(&b, &h, &d, 3, SEED).map_err(|e| e.to_string())
    };
    let good = classify(&corpus("pair-translation-quotient"))?;
    let sandwich = good.checks.iter().filter(|c| c.name.starts_with("sandwich/")).count();
    ensure(sandwich == 3 && good.passed(), || good.to_text())?;
    let bad = classify(&corpus("fail-quotient-x-dependent"))?;
    let inv = bad.check("𝔇 is invariant under the bisections of H").ok_or("no invariance check")?;
    ensure(inv.status == Status::Fail && !inv.witnesses.is_empty(), || bad.to_text())?;
    // (c) Poisson group, 𝔇 = AH ⊕ AH°
    let doc = corpus("poisson-group");
    let b = build_b(&doc.def, &doc.frame).map_err(|e| e.to_string())?;
    let d = doc.unit_dirac().map_err(|e| e.to_string())?.unwrap();
    let built = build_homogeneous(&b, &d).map_err(|e| e.to_string())?;
    let direct = courant_tensor(&built).map_err(|e| e.to_string())?.closed;
    // AH = span e_x, AH° = span dy; the double gives [e_x, dy] = −e_x, so AH ⊕ AH° is a subalgebra
    let subalgebra = true;
    let r = classify(&doc)?;
    ensure(r.passed(), || r.to_text())?;
    ensure(direct == subalgebra, || format!("Courant tensor says closed = {direct}"))?;
    ensure(r.check("closedness verdicts agree").map(|c| c.status) == Some(Status::Pass), || r.to_text())?;
    Ok(format!(
        "D_G rebuilt for 3 examples; translation quotient passes, perturbation fails with {} witness(es); Poisson closed = {direct} both ways",
        inv.witnesses.len()
    ))
}

fn criterion_10() -> Outcome {
    use dirac_groupoids::cli::{run, Options, Task};
    let cases = [
        ("fail-bad-multiplication", Task::VerifyMultiplicative),
        ("fail-pair-not-closed", Task::VerifyDirac),
        ("fail-pair-not-closed", Task::Integrability),
        ("fail-pair-not-closed", Task::CourantAxioms),
        ("fail-poisson-quadratic", Task::VerifyMultiplicative),
        ("fail-quotient-x-dependent", Task::Classify),
    ];
    for (name, task) in cases {
        let r = run(task, &corpus(name), Options::default()).map_err(|e| e.to_string())?;
        ensure(!r.passed(), || format!("{name} {task:?} passed"))?;
        for c in r.checks.iter().filter(|c| c.status == Status::Fail) {
            ensure(!c.witnesses.is_empty(), || format!("{name} {task:?}: `{}` has no witness", c.name))?;
        }
    }
    Ok(format!("{} negative runs fail, each failed check with a witness", cases.len()))
}

/// Written to the stdout handle directly so the lines survive the test harness's capture.
fn verdict(line: String) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Pontryagin Courant algebroid", criterion_1),
        ("pair Dirac groupoid", criterion_2),
        ("infinitesimal objects", criterion_3),
        ("induced bracket", criterion_4),
        ("integrability criterion", criterion_5),
        ("𝔅 Courant algebroid", criterion_6),
        ("isomorphism transport", criterion_7),
        ("bisection action", criterion_8),
        ("homogeneous pipeline", criterion_9),
        ("negative controls", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => verdict(format!("criterion {:>2} PASS  {name} ({secs:.1}s): {detail}", i + 1)),
            Err(why) => {
                verdict(format!("criterion {:>2} FAIL  {name} ({secs:.1}s): {why}", i + 1));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
