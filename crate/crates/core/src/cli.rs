//! Command dispatch for the `diracgrp` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bcourant::{build_b, check_b_axioms, check_bisection_action, iso_pair, iso_poisson, iso_presymplectic, test_functions, BFrame};
use crate::dirac::{characteristic_ranks_at, check_lagrangian, courant_tensor};
use crate::document::{load, Loaded};
use crate::error::{Error, Result};
use crate::groupoid::{check_dirac_multiplicative, check_groupoid_axioms, pair_groupoid, Bisection};
use crate::homogeneous::{drinfeld_classify, UnitDirac};
use crate::infinitesimal::Infinitesimal;
use crate::report::Report;
use crate::sampling::{Sampler, WITNESS_SEED};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IsoKind {
    Poisson,
    Presymplectic,
    Pair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    VerifyDirac,
    VerifyMultiplicative,
    UnitsAlgebroid,
    Cores,
    BaseDirac,
    Integrability,
    BuildB,
    CourantAxioms,
    IsoCheck(IsoKind),
    BisectionAction,
    Classify,
}

impl Task {
    /// `name` is a command name; `iso-check` takes its variant as `kind`.
    pub fn parse(name: &str, kind: Option<&str>) -> Result<Self> {
        Ok(match name {
            "verify-dirac" => Task::VerifyDirac,
            "verify-multiplicative" => Task::VerifyMultiplicative,
            "units-algebroid" => Task::UnitsAlgebroid,
            "cores" => Task::Cores,
            "base-dirac" => Task::BaseDirac,
            "integrability" => Task::Integrability,
            "build-b" => Task::BuildB,
            "courant-axioms" => Task::CourantAxioms,
            "bisection-action" => Task::BisectionAction,
            "classify" => Task::Classify,
            "iso-check" => {
                let kind = kind.ok_or_else(|| Error::UnknownCommand("iso-check needs poisson, presymplectic or pair".into()))?;
                Task::IsoCheck(
                    IsoKind::from_str(kind, false).map_err(|_| Error::UnknownCommand(format!("iso-check {kind}")))?,
                )
            }
            other => return Err(Error::UnknownCommand(other.to_string())),
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

#[derive(Debug, Parser)]
#[command(name = "diracgrp", version, about = "Exact checks for multiplicative Dirac structures on Lie groupoids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON document (format version "1")
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Lagrangian, closed, characteristic ranks
    VerifyDirac(Common),
    /// Groupoid axioms and multiplicativity at sampled pairs
    VerifyMultiplicative(Common),
    UnitsAlgebroid(Common),
    Cores(Common),
    /// Induced Dirac structure on the units
    BaseDirac(Common),
    /// Closedness through the units algebroid versus the Courant tensor
    Integrability(Common),
    BuildB(Common),
    CourantAxioms(Common),
    IsoCheck {
        #[arg(value_enum)]
        kind: IsoKind,
        #[command(flatten)]
        common: Common,
    },
    BisectionAction(Common),
    /// Homogeneous-space pipeline on `subgroupoid` and `unit_dirac`
    Classify(Common),
}

impl CliCommand {
    pub fn split(&self) -> (Task, &Common) {
        match self {
            CliCommand::VerifyDirac(c) => (Task::VerifyDirac, c),
            CliCommand::VerifyMultiplicative(c) => (Task::VerifyMultiplicative, c),
            CliCommand::UnitsAlgebroid(c) => (Task::UnitsAlgebroid, c),
            CliCommand::Cores(c) => (Task::Cores, c),
            CliCommand::BaseDirac(c) => (Task::BaseDirac, c),
            CliCommand::Integrability(c) => (Task::Integrability, c),
            CliCommand::BuildB(c) => (Task::BuildB, c),
            CliCommand::CourantAxioms(c) => (Task::CourantAxioms, c),
            CliCommand::IsoCheck { kind, common } => (Task::IsoCheck(*kind), common),
            CliCommand::BisectionAction(c) => (Task::BisectionAction, c),
            CliCommand::Classify(c) => (Task::Classify, c),
        }
    }
}

/// Exit status for a finished report: 0 on pass, 1 on a failed verification.
pub fn exit_status(report: &Report) -> i32 {
    if report.passed() {
        0
    } else {
        1
    }
}

/// Reads, runs, writes; returns the process exit code.
pub fn main_with(cli: &Cli) -> i32 {
    let (task, common) = cli.command.split();
    let opts = Options {
        seed: common.seed,
        samples: common.samples,
    };
    let outcome = std::fs::read_to_string(&common.input)
        .map_err(|e| Error::Io(format!("{}: {e}", common.input.display())))
        .and_then(|text| run_text(task, &text, opts));
    match outcome {
        Ok(report) => {
            print!("{}", report.to_text());
            if let Some(path) = &common.json_out {
                if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
                    eprintln!("error: {}: {e}", path.display());
                    return 2;
                }
            }
            exit_status(&report)
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run_text(task: Task, text: &str, opts: Options) -> Result<Report> {
    run(task, &load(text)?, opts)
}

pub fn run(task: Task, doc: &Loaded, opts: Options) -> Result<Report> {
    let seed = opts.seed.unwrap_or(doc.seed);
    let samples = opts.samples.unwrap_or(doc.samples);
    let def = &doc.def;
    let mut r = match task {
        Task::VerifyDirac => verify_dirac(doc)?,
        Task::VerifyMultiplicative => {
            let mut r = Report::new("verify-multiplicative");
            r.seed = Some(seed);
            let axioms = check_groupoid_axioms(def, samples, seed)?;
            let ok = axioms.passed();
            r.absorb("groupoid", axioms);
            if ok {
                r.absorb("dirac", check_dirac_multiplicative(def, &doc.frame, samples, seed)?);
            } else {
                r.not_applicable("dirac", "groupoid axioms fail");
            }
            r
        }
        Task::UnitsAlgebroid => {
            let inf = Infinitesimal::new(def, &doc.frame)?;
            let mut r = inf.report()?;
            for (i, a) in inf.units.iter().enumerate() {
                r.note(format!("𝔄[{i}] = {a}"));
            }
            r
        }
        Task::Cores => {
            let inf = Infinitesimal::new(def, &doc.frame)?;
            let mut r = inf.report()?;
            r.command = "cores".into();
            for (i, a) in inf.s_core.iter().enumerate() {
                r.note(format!("Is[{i}] = {a}"));
            }
            for (i, a) in inf.t_core.iter().enumerate() {
                r.note(format!("It[{i}] = {a}"));
            }
            r
        }
        Task::BaseDirac => Infinitesimal::new(def, &doc.frame)?.base_dirac(samples, seed)?.1,
        Task::Integrability => Infinitesimal::new(def, &doc.frame)?.integrability_criterion()?,
        Task::BuildB => build_b(def, &doc.frame)?.report()?,
        Task::CourantAxioms => {
            let b = build_b(def, &doc.frame)?;
            let functions = test_functions(&def.base, seed);
            let mut r = check_b_axioms(&b, &functions)?;
            if let Some(omega) = &doc.two_form {
                if b.closed {
                    r.absorb("Λ", iso_presymplectic(&b, omega, &functions)?);
                }
            }
            if is_pair(def)? && b.closed {
                r.absorb("Π", iso_pair(&b, &functions)?);
            }
            r
        }
        Task::IsoCheck(kind) => iso_check(doc, kind, seed)?,
        Task::BisectionAction => {
            let b = build_b(def, &doc.frame)?;
            let mut list = vec![Bisection::identity(def)];
            list.extend(doc.bisections.iter().cloned());
            let mut r = check_bisection_action(&b, &list, samples, seed)?;
            r.command = "bisection-action".into();
            r
        }
        Task::Classify => {
            let b = build_b(def, &doc.frame)?;
            let h = doc.subgroupoid()?;
            let d = match doc.unit_dirac()? {
                Some(d) => d,
                None => UnitDirac::of_groupoid(&b)?,
            };
            drinfeld_classify(&b, &h, &d, samples, seed)?
        }
    };
    if r.seed.is_none() && !r.sample_points.is_empty() {
        r.seed = Some(seed);
    }
    Ok(r)
}

fn is_pair(def: &crate::groupoid::GroupoidDef) -> Result<bool> {
    let k = def.m();
    if def.n() != 2 * k {
        return Ok(false);
    }
    let expected = pair_groupoid(&def.base)?;
    Ok(def.mult.same_as(&expected.mult) && def.src.same_as(&expected.src) && def.tgt.same_as(&expected.tgt))
}

fn verify_dirac(doc: &Loaded) -> Result<Report> {
    let frame = &doc.frame;
    let mut r = Report::new("verify-dirac");
    let (p, _) = Sampler::new(WITNESS_SEED).point_where(&doc.def.total, |p| frame.matrix_at(&p.coords).map(|_| ()))?;
    r.absorb("lagrangian", check_lagrangian(frame, &p)?);
    let tensor = courant_tensor(frame)?;
    match tensor.first_nonzero() {
        None => {
            r.pass("closed");
        }
        Some((i, j, k, v)) => {
            r.fail("closed", format!("T(e{i}, e{j}, e{k}) = {v}"));
        }
    }
    let ranks = characteristic_ranks_at(frame, &p)?;
    r.note(format!(
        "at {p}: rank D∩TM = {}, rank pr_TM = {}, rank D∩T*M = {}, rank pr_T*M = {}",
        ranks.g0, ranks.g1, ranks.p0, ranks.p1
    ));
    Ok(r)
}

fn closed_b(doc: &Loaded) -> Result<BFrame> {
    let b = build_b(&doc.def, &doc.frame)?;
    if !b.closed {
        return Err(Error::WellDefinednessViolation(
            b.not_closed_witness.clone().unwrap_or_else(|| "D_G is not closed".into()),
        ));
    }
    Ok(b)
}

fn iso_check(doc: &Loaded, kind: IsoKind, seed: u64) -> Result<Report> {
    let functions = test_functions(&doc.def.base, seed);
    match kind {
        IsoKind::Pair => {
            if !is_pair(&doc.def)? {
                return Err(Error::FamilyMismatch("pair groupoid".into()));
            }
            iso_pair(&closed_b(doc)?, &functions)
        }
        IsoKind::Presymplectic => {
            let omega = doc
                .two_form
                .as_ref()
                .ok_or_else(|| Error::FamilyMismatch("presymplectic (dirac must be a 2-form)".into()))?;
            iso_presymplectic(&closed_b(doc)?, omega, &functions)
        }
        IsoKind::Poisson => {
            let pi = doc
                .bivector
                .as_ref()
                .ok_or_else(|| Error::FamilyMismatch("Poisson (dirac must be a bivector)".into()))?;
            iso_poisson(&closed_b(doc)?, pi)
        }
    }
}
