//! Front-end for `linfree-core`: input records, JSON reports, the regression
//! table and the property suite shared by the CLI and the acceptance tests.

use std::path::PathBuf;

use linfree_core::divisor::{analyze_divisor, b0_check, hessian_identity_check};
use linfree_core::exactalg::format_rational;
use linfree_core::pipeline::{analyze, Analysis, Options};
use linfree_core::ErrorClass;

pub mod input;
pub mod properties;
pub mod regress;
pub mod report;

use input::{SectionSpec, Source};
use report::{AnalysisReport, DivisorOut, ErrorOut, InputEcho, VerifyReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] linfree_core::Error),
    #[error("cannot read {}: {1}", .0.display())]
    Io(PathBuf, std::io::Error),
    #[error("bad JSON in {}: {1}", .0.display())]
    Json(PathBuf, serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MATH: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.class() {
                ErrorClass::Input => EXIT_INPUT,
                ErrorClass::Math => EXIT_MATH,
                ErrorClass::Resource => EXIT_RESOURCE,
            },
            _ => EXIT_INPUT,
        }
    }

    pub fn to_out(&self) -> ErrorOut {
        let (code, module) = match self {
            CliError::Core(e) => (e.code(), e.module()),
            CliError::Io(..) => ("IoError", "cli"),
            CliError::Json(..) => ("JsonError", "cli"),
            CliError::Usage(_) => ("UsageError", "cli"),
        };
        let class = match self.exit_code() {
            EXIT_MATH => "math",
            EXIT_RESOURCE => "resource",
            _ => "input",
        };
        ErrorOut {
            code,
            module,
            class,
            message: self.to_string(),
        }
    }
}

/// A failed command together with whatever input was already known.
#[derive(Debug)]
pub struct Failure {
    pub input: Option<Box<InputEcho>>,
    pub error: CliError,
}

impl<E: Into<CliError>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            input: None,
            error: e.into(),
        }
    }
}

pub fn run_analyze(
    source: &Source,
    section: &SectionSpec,
    opts: &Options,
) -> Result<(AnalysisReport, Analysis), Failure> {
    let p = source.load()?;
    let echo = InputEcho {
        source: source.label(),
        name: p.name.clone(),
        n: p.n,
        section: section.label(),
    };
    let run =
        || -> Result<Analysis, CliError> { Ok(analyze(&p, &section.resolve(source)?, opts)?) };
    match run() {
        Ok(a) => Ok((AnalysisReport::new(echo, &a), a)),
        Err(error) => Err(Failure {
            input: Some(Box::new(echo)),
            error,
        }),
    }
}

/// Divisor checks only: Saito, weights, specialness, reductivity, Hessian
/// identity and `b_0`.
pub fn run_verify(source: &Source, max_monomials: u128) -> Result<VerifyReport, Failure> {
    let p = source.load()?;
    let echo = InputEcho {
        source: source.label(),
        name: p.name.clone(),
        n: p.n,
        section: "none".into(),
    };
    let run = || -> Result<DivisorOut, CliError> {
        let d = analyze_divisor(&p, max_monomials)?;
        let hessian = if d.n >= 2 && !d.h_dual.is_zero() {
            Some(hessian_identity_check(&d)?)
        } else {
            None
        };
        let b0 = b0_check(&d)?;
        Ok(DivisorOut::new(&d, hessian.as_ref(), b0.as_ref()))
    };
    match run() {
        Ok(divisor) => {
            let all_checks_pass = divisor.hessian.iter().all(|h| h.matches_expected);
            Ok(VerifyReport {
                schema_version: report::SCHEMA_VERSION,
                kind: "verify",
                input: echo,
                divisor,
                all_checks_pass,
            })
        }
        Err(error) => Err(Failure {
            input: Some(Box::new(echo)),
            error,
        }),
    }
}

fn join(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

pub fn analysis_table(r: &AnalysisReport) -> String {
    let s = &r.spectrum;
    let mut out = String::new();
    let mut line = |k: &str, v: String| out.push_str(&format!("{k:<22}{v}\n"));
    line("divisor", format!("{} (n = {})", r.input.name, r.input.n));
    line(
        "section",
        format!("{} = {}", r.input.section, join(&r.finiteness.f)),
    );
    line("special", r.divisor.special.to_string());
    line("reductive", r.divisor.reductive.to_string());
    line(
        "h terms",
        format!(
            "{} (sha256 {})",
            r.divisor.h.terms,
            &r.divisor.h.sha256[..16]
        ),
    );
    line("c (c0 = 1)", join(&r.connection.c));
    line("nu1", join(&s.nu1));
    line("nu2", join(&s.nu2));
    line("nu3", join(&s.nu3));
    line("k", s.k.to_string());
    line(
        "spectrum t = 0",
        format!("{} [{}]", join(&s.t0.sorted), s.t0_label),
    );
    line("spectrum t != 0", join(&s.generic.sorted));
    line(
        "jordan blocks",
        format!("{:?}", r.monodromy_generic.jordan_blocks),
    );
    line("residues", join(&r.residues));
    line("min multiplicity", r.conjecture.min_mult.to_string());
    line("flat indices", format!("{:?}", r.conjecture.flat_indices));
    line("extra symmetry", r.conjecture.extra_symmetry.to_string());
    line(
        "residues symmetric",
        r.conjecture.residues_symmetric.to_string(),
    );
    line("birkhoff verified", r.birkhoff.verified.to_string());
    if let Some(i) = &r.invariance {
        let ok = i.spectra_agree && i.monodromy_agrees && i.scan_order_agrees;
        line(
            "branch invariance",
            format!("{ok} over {} branches", i.branches),
        );
    }
    out
}

pub fn verify_table(r: &VerifyReport) -> String {
    let d = &r.divisor;
    let mut out = String::new();
    let mut line = |k: &str, v: String| out.push_str(&format!("{k:<22}{v}\n"));
    line("divisor", format!("{} (n = {})", r.input.name, r.input.n));
    line("saito", format!("ok, det = {} h", d.saito_scalar));
    line(
        "h terms",
        format!("{} (sha256 {})", d.h.terms, &d.h.sha256[..16]),
    );
    line("weights", join(&d.weights));
    line("special", d.special.to_string());
    line("reductive", d.reductive.to_string());
    match &d.hessian {
        Some(h) => line(
            "hessian identity",
            format!("c = {}, expected {} ({})", h.c, h.expected_c, h.method),
        ),
        None => line("hessian identity", "skipped (h_dual = 0)".into()),
    }
    match &d.b0 {
        Some(b) => line("b0", b.b0.clone()),
        None => line("b0", "skipped (not reductive)".into()),
    }
    out
}

/// Formats a rational multiset for messages.
pub fn fmt_multiset(v: &[linfree_core::Rational]) -> String {
    let mut s = v.to_vec();
    s.sort();
    format!(
        "{{{}}}",
        s.iter().map(format_rational).collect::<Vec<_>>().join(", ")
    )
}
