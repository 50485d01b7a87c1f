use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use linfree::input::{PresentationOut, SectionSpec, Source};
use linfree::regress::{self, RegressReport, Status};
use linfree::report::{to_json, ErrorReport, SCHEMA_VERSION};
use linfree::{
    analysis_table, run_analyze, run_verify, verify_table, CliError, Failure, EXIT_MATH,
    EXIT_RESOURCE,
};
use linfree_core::catalog::{canonical_f, family, FamilyId};
use linfree_core::divisor::DEFAULT_MAX_MONOMIALS;
use linfree_core::pipeline::Options;

/// Spectra of linear sections on linear free divisors, in exact arithmetic.
#[derive(Parser)]
#[command(name = "linfree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Catalog family: nc:N, star:M, dynkinD:M, e6, sym:K.
    #[arg(long, conflicts_with = "input")]
    family: Option<String>,
    /// Presentation record {"name", "n", "lie_basis"}.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct Common {
    /// Write the JSON report here.
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,
    /// Largest graded piece (in monomials) the connection stage may build.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_MONOMIALS)]
    max_monomials: u128,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on one divisor and section.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// canonical, random:SEED, or a file {"f": [...]}.
        #[arg(long = "f", value_name = "SECTION")]
        section: Option<String>,
        /// Also solve every root-choice branch, up to this many.
        #[arg(long, value_name = "N")]
        branches: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Check the divisor only.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Run the built-in expectation table.
    Regress {
        /// Only rows whose family id starts with this.
        #[arg(long, value_name = "PATTERN")]
        only: Option<String>,
        /// Include the rows beyond desk scale.
        #[arg(long)]
        extended: bool,
        #[arg(long, value_name = "N")]
        threads: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// List the families, or print one presentation as JSON.
    Catalog {
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
}

fn write_out(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    if let Some(p) = path {
        std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn fail(f: Failure, json: Option<&Path>) -> anyhow::Result<ExitCode> {
    let report = ErrorReport {
        schema_version: SCHEMA_VERSION,
        kind: "error",
        input: f.input.map(|b| *b),
        error: f.error.to_out(),
    };
    let text = to_json(&report);
    eprint!("{text}");
    write_out(json, &text)?;
    Ok(ExitCode::from(f.error.exit_code() as u8))
}

fn source(input: &InputArgs) -> Result<Source, CliError> {
    Source::from_args(input.family.as_deref(), input.input.as_deref())
}

fn analyze_cmd(
    input: &InputArgs,
    section: Option<&str>,
    branches: Option<usize>,
    common: &Common,
) -> anyhow::Result<ExitCode> {
    let json = common.json.as_deref();
    let src = match source(input) {
        Ok(s) => s,
        Err(e) => return fail(e.into(), json),
    };
    let spec = match section.map(SectionSpec::parse).transpose() {
        Ok(s) => s.unwrap_or_else(|| SectionSpec::default_for(&src)),
        Err(e) => return fail(e.into(), json),
    };
    let opts = Options {
        max_monomials: common.max_monomials,
        branch_cap: branches,
    };
    let start = Instant::now();
    match run_analyze(&src, &spec, &opts) {
        Ok((report, _)) => {
            print!("{}", analysis_table(&report));
            eprintln!("elapsed {:.2?}", start.elapsed());
            write_out(json, &to_json(&report))?;
            Ok(ExitCode::SUCCESS)
        }
        Err(f) => fail(f, json),
    }
}

fn verify_cmd(input: &InputArgs, common: &Common) -> anyhow::Result<ExitCode> {
    let json = common.json.as_deref();
    let src = match source(input) {
        Ok(s) => s,
        Err(e) => return fail(e.into(), json),
    };
    match run_verify(&src, common.max_monomials) {
        Ok(report) => {
            print!("{}", verify_table(&report));
            write_out(json, &to_json(&report))?;
            Ok(if report.all_checks_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MATH as u8)
            })
        }
        Err(f) => fail(f, json),
    }
}

fn regress_cmd(
    only: Option<&str>,
    extended: bool,
    threads: Option<usize>,
    common: &Common,
) -> anyhow::Result<ExitCode> {
    let rows = regress::default_rows();
    let selected = regress::select(&rows, only, extended);
    if selected.is_empty() {
        eprintln!("no rows match");
        return Ok(ExitCode::from(linfree::EXIT_INPUT as u8));
    }
    let opts = Options {
        max_monomials: common.max_monomials,
        branch_cap: Some(64),
    };
    let results = regress::run_rows(
        &selected,
        &opts,
        threads.unwrap_or_else(regress::default_threads),
    );
    for r in &results {
        println!("{}", regress::format_result(r));
        eprintln!("     {} took {:.2?}", r.id, r.elapsed);
    }
    let report = RegressReport::new(results);
    println!(
        "{} passed, {} failed, {} capped",
        report.passed, report.failed, report.capped
    );
    write_out(common.json.as_deref(), &to_json(&report))?;
    Ok(if report.failed > 0 {
        ExitCode::from(EXIT_MATH as u8)
    } else if report.rows.iter().any(|r| r.status == Status::Capped) {
        ExitCode::from(EXIT_RESOURCE as u8)
    } else {
        ExitCode::SUCCESS
    })
}

const FAMILIES: [(&str, &str); 5] = [
    ("nc:N", "normal crossing x1 ... xN"),
    ("star:M", "star quiver, M arms into a node of dimension M-1"),
    (
        "dynkinD:M",
        "D_M quiver at the highest root, arrows towards the branch node",
    ),
    (
        "e6",
        "E6 quiver at the highest root (construction only at desk scale)",
    ),
    (
        "sym:K",
        "product of leading principal minors of symmetric K x K matrices (non-reductive)",
    ),
];

fn catalog_cmd(id: Option<&str>, json: Option<&Path>) -> anyhow::Result<ExitCode> {
    let Some(id) = id else {
        for (id, what) in FAMILIES {
            println!("{id:<12}{what}");
        }
        return Ok(ExitCode::SUCCESS);
    };
    let parsed = FamilyId::parse(id)
        .map_err(CliError::from)
        .and_then(|f| Ok((f, family(f)?)));
    match parsed {
        Ok((f, p)) => {
            let text = to_json(&PresentationOut::from(&p));
            match json {
                Some(_) => write_out(json, &text)?,
                None => print!("{text}"),
            }
            if let Some(s) = canonical_f(f) {
                let v: Vec<String> = s.coefficients().iter().map(|r| r.to_string()).collect();
                eprintln!("canonical f = ({})", v.join(", "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => fail(e.into(), None),
    }
}

fn main() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Analyze {
            input,
            section,
            branches,
            common,
        } => analyze_cmd(input, section.as_deref(), *branches, common),
        Command::Verify { input, common } => verify_cmd(input, common),
        Command::Regress {
            only,
            extended,
            threads,
            common,
        } => regress_cmd(only.as_deref(), *extended, *threads, common),
        Command::Catalog { family, json } => catalog_cmd(family.as_deref(), json.as_deref()),
    }
}
