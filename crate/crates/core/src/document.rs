//! JSON input documents (format version "1"); expressions are strings in the expression grammar.

use serde::Deserialize;

use crate::dirac::{from_bivector, from_two_form, Bivector, DiracFrame, PSection, PVec};
use crate::error::{Error, Result};
use crate::geometry::{pullback_form, Chart, KForm, SmoothMap, RF};
use crate::groupoid::{group_over_point, pair_dirac, pair_groupoid, Bisection, GroupoidDef, GroupoidParts};
use crate::homogeneous::{SubgroupoidData, UnitDirac};
use crate::sampling::{DEFAULT_SAMPLES, DEFAULT_SEED};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    pub name: String,
    pub coordinates: Vec<String>,
}

impl ChartSpec {
    fn build(&self) -> Result<Chart> {
        Ok(Chart::new(&self.name, &self.coordinates)?)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupoidSpec {
    /// `M × M ⇉ M`; arrow coordinates are the base names suffixed with 1 (target) and 2 (source).
    Pair { base: ChartSpec },
    /// Lie group over a point; `mult` is written in `g_<v>`, `h_<v>`.
    Group {
        name: String,
        coordinates: Vec<String>,
        mult: Vec<String>,
        inverse: Vec<String>,
        unit: Vec<String>,
    },
    General {
        total: ChartSpec,
        base: ChartSpec,
        composable: ChartSpec,
        source: Vec<String>,
        target: Vec<String>,
        unit: Vec<String>,
        inverse: Vec<String>,
        pr1: Vec<String>,
        pr2: Vec<String>,
        mult: Vec<String>,
        join: Vec<String>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub indices: Vec<usize>,
    pub value: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionSpec {
    pub vector: Vec<String>,
    pub covector: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DiracSpec {
    Bivector { entries: Vec<Entry> },
    TwoForm { entries: Vec<Entry> },
    Frame { sections: Vec<SectionSpec> },
    /// `D_M ⊖ D_M` on the pair groupoid, from a structure on the base.
    PairOf { base: Box<DiracSpec> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BisectionSpec {
    pub label: String,
    pub map: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupoidSpec {
    #[serde(default)]
    pub algebroid: Vec<Vec<String>>,
    /// Labels of entries in `bisections`.
    #[serde(default)]
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingSpec {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub version: String,
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub sampling: SamplingSpec,
    pub groupoid: GroupoidSpec,
    pub dirac: DiracSpec,
    #[serde(default)]
    pub bisections: Vec<BisectionSpec>,
    #[serde(default)]
    pub subgroupoid: Option<SubgroupoidSpec>,
    /// Generators of `𝔇` along the units; defaults to the datum of the groupoid itself.
    #[serde(default)]
    pub unit_dirac: Option<Vec<SectionSpec>>,
}

/// A document with every cross-reference resolved.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub doc: Document,
    pub def: GroupoidDef,
    pub frame: DiracFrame,
    pub bivector: Option<Bivector>,
    pub two_form: Option<KForm>,
    pub bisections: Vec<Bisection>,
    pub seed: u64,
    pub samples: usize,
}

pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    match value.get("version").and_then(|v| v.as_str()) {
        Some(FORMAT_VERSION) => {}
        Some(other) => return Err(Error::Schema(format!("unsupported version `{other}`"))),
        None => return Err(Error::Schema("missing string field `version`".into())),
    }
    serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))
}

fn build_groupoid(spec: &GroupoidSpec) -> Result<GroupoidDef> {
    match spec {
        GroupoidSpec::Pair { base } => pair_groupoid(&base.build()?),
        GroupoidSpec::Group {
            name,
            coordinates,
            mult,
            inverse,
            unit,
        } => group_over_point(name, coordinates, mult, inverse, unit),
        GroupoidSpec::General {
            total,
            base,
            composable,
            source,
            target,
            unit,
            inverse,
            pr1,
            pr2,
            mult,
            join,
        } => {
            let (g, p, c) = (total.build()?, base.build()?, composable.build()?);
            let pair = crate::groupoid::pair_chart_of(&g)?;
            GroupoidDef::new(GroupoidParts {
                name: g.name().to_string(),
                src: SmoothMap::parse(&g, &p, source)?,
                tgt: SmoothMap::parse(&g, &p, target)?,
                unit: SmoothMap::parse(&p, &g, unit)?,
                inv: SmoothMap::parse(&g, &g, inverse)?,
                pr1: SmoothMap::parse(&c, &g, pr1)?,
                pr2: SmoothMap::parse(&c, &g, pr2)?,
                mult: SmoothMap::parse(&c, &g, mult)?,
                join: SmoothMap::parse(&pair, &c, join)?,
                total: g,
                base: p,
                composable: c,
            })
        }
    }
}

fn entries(chart: &Chart, list: &[Entry], degree: usize) -> Result<Vec<(Vec<usize>, RF)>> {
    list.iter()
        .map(|e| {
            if e.indices.len() != degree || e.indices.iter().any(|&i| i >= chart.dim()) {
                return Err(Error::Schema(format!("bad indices {:?} on {}", e.indices, chart)));
            }
            Ok((e.indices.clone(), chart.parse(&e.value)?))
        })
        .collect()
}

fn bivector_on(chart: &Chart, list: &[Entry]) -> Result<Bivector> {
    let e = entries(chart, list, 2)?.into_iter().map(|(i, v)| ((i[0], i[1]), v)).collect();
    Bivector::from_entries(chart, e)
}

pub fn section_on(chart: &Chart, s: &SectionSpec) -> Result<PSection> {
    PSection::parse(chart, &s.vector, &s.covector)
}

fn column_on(chart: &Chart, s: &SectionSpec, len: usize) -> Result<PVec<RF>> {
    if s.vector.len() != len || s.covector.len() != len {
        return Err(Error::Schema(format!("unit column needs {len} + {len} entries")));
    }
    let parse = |v: &[String]| v.iter().map(|t| chart.parse(t).map_err(Error::from)).collect::<Result<Vec<_>>>();
    Ok(PVec::new(parse(&s.vector)?, parse(&s.covector)?))
}

/// Structure on `chart`, plus the bivector or 2-form it is the graph of when known.
fn build_dirac(chart: &Chart, spec: &DiracSpec) -> Result<(DiracFrame, Option<Bivector>, Option<KForm>)> {
    match spec {
        DiracSpec::Bivector { entries } => {
            let pi = bivector_on(chart, entries)?;
            Ok((from_bivector(&pi), Some(pi), None))
        }
        DiracSpec::TwoForm { entries: list } => {
            let omega = KForm::from_entries(chart, 2, entries(chart, list, 2)?)?;
            Ok((from_two_form(&omega)?, None, Some(omega)))
        }
        DiracSpec::Frame { sections } => {
            let s = sections.iter().map(|s| section_on(chart, s)).collect::<Result<Vec<_>>>()?;
            Ok((DiracFrame::new(chart, s, "frame")?, None, None))
        }
        DiracSpec::PairOf { .. } => Err(Error::Schema("pair_of is only allowed at the top level".into())),
    }
}

impl Loaded {
    pub fn from_document(doc: Document) -> Result<Self> {
        let def = build_groupoid(&doc.groupoid)?;
        let (frame, bivector, two_form) = match &doc.dirac {
            DiracSpec::PairOf { base } => {
                if !matches!(doc.groupoid, GroupoidSpec::Pair { .. }) {
                    return Err(Error::FamilyMismatch("pair groupoid (pair_of needs family = pair)".into()));
                }
                let (dm, pi, omega) = build_dirac(&def.base, base)?;
                let (_, frame) = pair_dirac(&dm)?;
                let k = def.m();
                let pi_g = match pi {
                    Some(pi) => {
                        let mut e = Vec::new();
                        for (idx, c) in pi.entries() {
                            e.push(((idx[0], idx[1]), def.tgt.pull_function(c)?));
                            e.push(((k + idx[0], k + idx[1]), -def.src.pull_function(c)?));
                        }
                        Some(Bivector::from_entries(&def.total, e)?)
                    }
                    None => None,
                };
                let omega_g = match omega {
                    Some(w) => Some(pullback_form(&def.tgt, &w)?.sub(&pullback_form(&def.src, &w)?)?),
                    None => None,
                };
                (frame, pi_g, omega_g)
            }
            other => build_dirac(&def.total, other)?,
        };
        let bisections = doc
            .bisections
            .iter()
            .map(|b| Bisection::new(&def, SmoothMap::parse(&def.base, &def.total, &b.map)?, &b.label))
            .collect::<Result<Vec<_>>>()?;
        Ok(Loaded {
            seed: doc.sampling.seed.unwrap_or(DEFAULT_SEED),
            samples: doc.sampling.samples.unwrap_or(DEFAULT_SAMPLES),
            doc,
            def,
            frame,
            bivector,
            two_form,
            bisections,
        })
    }

    pub fn subgroupoid(&self) -> Result<SubgroupoidData> {
        let Some(spec) = &self.doc.subgroupoid else {
            return Ok(SubgroupoidData::units_only(&self.def));
        };
        let algebroid = spec
            .algebroid
            .iter()
            .map(|c| c.iter().map(|t| self.def.base.parse(t).map_err(Error::from)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let generators = if spec.generators.is_empty() {
            vec![Bisection::identity(&self.def)]
        } else {
            spec.generators
                .iter()
                .map(|l| {
                    self.bisections
                        .iter()
                        .find(|b| &b.label == l)
                        .cloned()
                        .ok_or_else(|| Error::Schema(format!("unknown bisection `{l}`")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        SubgroupoidData::new(&self.def, algebroid, generators)
    }

    /// `None` means the groupoid's own datum `Iˢ ⊕ 𝔄`.
    pub fn unit_dirac(&self) -> Result<Option<UnitDirac>> {
        let Some(list) = &self.doc.unit_dirac else { return Ok(None) };
        let cols = list
            .iter()
            .map(|s| column_on(&self.def.base, s, self.def.n()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(UnitDirac::new(&self.def, cols)?))
    }
}

pub fn load(text: &str) -> Result<Loaded> {
    Loaded::from_document(parse_document(text)?)
}
