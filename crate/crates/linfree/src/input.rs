//! Input records and the `--family` / `--input` / `--f` resolution.

use std::path::{Path, PathBuf};

use linfree_core::catalog::{canonical_f, family, FamilyId};
use linfree_core::divisor::LfdPresentation;
use linfree_core::exactalg::{format_rational, parse_rational, Rational, RationalMatrix};
use linfree_core::pipeline::SectionChoice;
use linfree_core::sections::LinearSection;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A rational written as a JSON string `"p/q"` or a JSON integer.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Text(String),
    Int(i64),
}

impl RationalText {
    fn value(&self) -> Result<Rational, CliError> {
        match self {
            RationalText::Text(s) => Ok(parse_rational(s)?),
            RationalText::Int(i) => Ok(Rational::from_integer((*i).into())),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationRecord {
    pub name: String,
    pub n: usize,
    /// Row-major `n × n` matrices.
    pub lie_basis: Vec<Vec<Vec<RationalText>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionRecord {
    pub f: Vec<RationalText>,
}

/// The serialized form emitted by `catalog --family`.
#[derive(Clone, Debug, Serialize)]
pub struct PresentationOut {
    pub name: String,
    pub n: usize,
    pub lie_basis: Vec<Vec<Vec<String>>>,
}

impl From<&LfdPresentation> for PresentationOut {
    fn from(p: &LfdPresentation) -> Self {
        let lie_basis = p
            .lie_basis
            .iter()
            .map(|a| {
                (0..a.rows())
                    .map(|i| a.row(i).iter().map(format_rational).collect())
                    .collect()
            })
            .collect();
        PresentationOut {
            name: p.name.clone(),
            n: p.n,
            lie_basis,
        }
    }
}

impl PresentationRecord {
    pub fn into_presentation(self) -> Result<LfdPresentation, CliError> {
        if self.lie_basis.len() != self.n {
            return Err(linfree_core::Error::DimensionMismatch {
                expected: self.n,
                found: self.lie_basis.len(),
            }
            .into());
        }
        let mut basis = Vec::with_capacity(self.n);
        for m in &self.lie_basis {
            if m.len() != self.n {
                return Err(linfree_core::Error::DimensionMismatch {
                    expected: self.n,
                    found: m.len(),
                }
                .into());
            }
            let mut rows = Vec::with_capacity(self.n);
            for r in m {
                if r.len() != self.n {
                    return Err(linfree_core::Error::DimensionMismatch {
                        expected: self.n,
                        found: r.len(),
                    }
                    .into());
                }
                rows.push(
                    r.iter()
                        .map(RationalText::value)
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            basis.push(RationalMatrix::from_rows(rows));
        }
        Ok(LfdPresentation::new(self.name, basis)?)
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(path.to_path_buf(), e))
}

pub fn read_presentation(path: &Path) -> Result<LfdPresentation, CliError> {
    read_json::<PresentationRecord>(path)?.into_presentation()
}

pub fn read_section(path: &Path) -> Result<LinearSection, CliError> {
    let rec: SectionRecord = read_json(path)?;
    let v = rec
        .f
        .iter()
        .map(RationalText::value)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LinearSection::new(v)?)
}

/// Where the presentation comes from.
#[derive(Clone, Debug)]
pub enum Source {
    Family(FamilyId),
    File(PathBuf),
}

impl Source {
    pub fn from_args(family: Option<&str>, input: Option<&Path>) -> Result<Source, CliError> {
        match (family, input) {
            (Some(f), None) => Ok(Source::Family(FamilyId::parse(f)?)),
            (None, Some(p)) => Ok(Source::File(p.to_path_buf())),
            _ => Err(CliError::Usage(
                "exactly one of --family and --input is required".into(),
            )),
        }
    }

    pub fn load(&self) -> Result<LfdPresentation, CliError> {
        match self {
            Source::Family(id) => Ok(family(*id)?),
            Source::File(p) => read_presentation(p),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Source::Family(id) => id.to_string(),
            Source::File(p) => p.display().to_string(),
        }
    }
}

/// Parsed `--f` value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionSpec {
    Canonical,
    Random(u64),
    File(PathBuf),
}

impl SectionSpec {
    pub fn parse(s: &str) -> Result<SectionSpec, CliError> {
        if s == "canonical" {
            return Ok(SectionSpec::Canonical);
        }
        if let Some(seed) = s.strip_prefix("random:") {
            let seed = seed
                .parse()
                .map_err(|_| CliError::Usage(format!("bad seed in --f {s:?}")))?;
            return Ok(SectionSpec::Random(seed));
        }
        Ok(SectionSpec::File(PathBuf::from(s)))
    }

    /// Canonical when the family has a fixed section, otherwise `random:0`.
    pub fn default_for(source: &Source) -> SectionSpec {
        match source {
            Source::Family(id) if canonical_f(*id).is_some() => SectionSpec::Canonical,
            _ => SectionSpec::Random(0),
        }
    }

    pub fn resolve(&self, source: &Source) -> Result<SectionChoice, CliError> {
        match self {
            SectionSpec::Canonical => match source {
                Source::Family(id) => canonical_f(*id).map(SectionChoice::Given).ok_or_else(|| {
                    CliError::Usage(format!(
                        "{id} has no canonical section; use --f random:SEED"
                    ))
                }),
                Source::File(_) => Err(CliError::Usage("--f canonical needs --family".into())),
            },
            SectionSpec::Random(seed) => Ok(SectionChoice::Random(*seed)),
            SectionSpec::File(p) => Ok(SectionChoice::Given(read_section(p)?)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            SectionSpec::Canonical => "canonical".into(),
            SectionSpec::Random(seed) => format!("random:{seed}"),
            SectionSpec::File(p) => p.display().to_string(),
        }
    }
}
