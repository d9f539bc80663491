//! Structured verdicts.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valid_away_from: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sample_points: Vec<String>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        status: Status,
        witnesses: Vec<String>,
    ) -> &mut Check {
        self.checks.push(Check {
            name: name.into(),
            status,
            witnesses,
            valid_away_from: None,
        });
        self.checks.last_mut().expect("just pushed")
    }

    pub fn pass(&mut self, name: impl Into<String>) -> &mut Check {
        self.push(name, Status::Pass, Vec::new())
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) -> &mut Check {
        self.push(name, Status::Fail, vec![witness.into()])
    }

    pub fn not_applicable(
        &mut self,
        name: impl Into<String>,
        why: impl Into<String>,
    ) -> &mut Check {
        self.push(name, Status::NotApplicable, vec![why.into()])
    }

    /// Records pass when `ok`, otherwise fail with the lazily built witness.
    pub fn record(
        &mut self,
        name: impl Into<String>,
        ok: bool,
        witness: impl FnOnce() -> String,
    ) -> &mut Check {
        if ok {
            self.pass(name)
        } else {
            self.fail(name, witness())
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Appends another report's checks with a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}/{}", c.name);
            }
            self.checks.push(c);
        }
        for p in other.sample_points {
            if !self.sample_points.contains(&p) {
                self.sample_points.push(p);
            }
        }
        self.notes
            .extend(other.notes.into_iter().map(|n| if prefix.is_empty() { n } else { format!("{prefix}: {n}") }));
        if self.seed.is_none() {
            self.seed = other.seed;
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Envelope<'a> {
            version: &'static str,
            passed: bool,
            #[serde(flatten)]
            report: &'a Report,
        }
        let envelope = Envelope {
            version: "1",
            passed: self.passed(),
            report: self,
        };
        serde_json::to_string_pretty(&envelope).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}: {}",
            self.command,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        if let Some(seed) = self.seed {
            let _ = writeln!(
                out,
                "  seed {seed}, {} sample points",
                self.sample_points.len()
            );
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::NotApplicable => "n/a ",
            };
            let _ = writeln!(out, "  [{tag}] {}", c.name);
            for w in &c.witnesses {
                let _ = writeln!(out, "         {w}");
            }
            if let Some(d) = &c.valid_away_from {
                let _ = writeln!(out, "         valid away from {d} = 0");
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        out
    }
}
