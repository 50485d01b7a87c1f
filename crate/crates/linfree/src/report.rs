//! Machine-readable reports.
//!
//! Every report carries [`SCHEMA_VERSION`]. Reports contain no timing and no
//! host information, so identical inputs give byte-identical JSON.

use linfree_core::birkhoff::verify_birkhoff;
use linfree_core::divisor::{B0Report, CheckMethod, DivisorData, HessianReport};
use linfree_core::exactalg::{format_rational, Rational, SparsePoly};
use linfree_core::pipeline::Analysis;
use linfree_core::spectrum::MonodromyData;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

/// Polynomials with more terms than this are truncated in the text field.
pub const MAX_POLY_TERMS: usize = 10_000;

fn q(r: &Rational) -> String {
    format_rational(r)
}

fn qs(v: &[Rational]) -> Vec<String> {
    v.iter().map(q).collect()
}

fn sorted(v: &[Rational]) -> Vec<String> {
    let mut s = v.to_vec();
    s.sort();
    qs(&s)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PolyText {
    pub terms: usize,
    pub degree: Option<u32>,
    /// At most [`MAX_POLY_TERMS`] terms, followed by `" + ..."` when cut.
    pub text: String,
    pub truncated: bool,
    /// SHA-256 of the full text.
    pub sha256: String,
}

impl PolyText {
    pub fn new(p: &SparsePoly) -> PolyText {
        Self::with_cap(p, MAX_POLY_TERMS)
    }

    pub fn with_cap(p: &SparsePoly, cap: usize) -> PolyText {
        let full = p.to_string();
        let digest = Sha256::digest(full.as_bytes());
        let truncated = p.len() > cap;
        let text = if truncated {
            let head = SparsePoly::from_unsorted(p.nvars(), p.terms()[..cap].to_vec());
            format!("{head} + ...")
        } else {
            full
        };
        PolyText {
            terms: p.len(),
            degree: p.total_degree(),
            text,
            truncated,
            sha256: format!("{digest:x}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub source: String,
    pub name: String,
    pub n: usize,
    pub section: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct HessianOut {
    pub c: String,
    pub expected_c: String,
    pub matches_expected: bool,
    pub ratio_to_n_minus_1: String,
    pub method: String,
}

fn method(m: CheckMethod) -> String {
    match m {
        CheckMethod::Symbolic => "symbolic".into(),
        CheckMethod::Evaluation { points } => format!("evaluation at {points} seeded points"),
    }
}

impl From<&HessianReport> for HessianOut {
    fn from(h: &HessianReport) -> Self {
        HessianOut {
            c: q(&h.c),
            expected_c: q(&h.expected_c),
            matches_expected: h.matches_expected,
            ratio_to_n_minus_1: q(&h.ratio_to_n_minus_1),
            method: method(h.method),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct B0Out {
    pub b0: String,
    pub method: String,
}

impl From<&B0Report> for B0Out {
    fn from(b: &B0Report) -> Self {
        B0Out {
            b0: q(&b.b0),
            method: method(b.method),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisorOut {
    pub h: PolyText,
    pub h_dual: PolyText,
    pub saito_scalar: String,
    pub weights: Vec<String>,
    pub log_h_traces: Vec<String>,
    pub special: bool,
    pub reductive: &'static str,
    pub hessian: Option<HessianOut>,
    pub b0: Option<B0Out>,
}

impl DivisorOut {
    pub fn new(d: &DivisorData, hessian: Option<&HessianReport>, b0: Option<&B0Report>) -> Self {
        DivisorOut {
            h: PolyText::new(&d.h),
            h_dual: PolyText::new(&d.h_dual),
            saito_scalar: q(&d.saito_scalar),
            weights: qs(&d.weights),
            log_h_traces: d.log_h_basis.iter().map(|a| q(&a.trace())).collect(),
            special: d.special,
            reductive: d.reductive.as_str(),
            hessian: hessian.map(HessianOut::from),
            b0: b0.map(B0Out::from),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FinitenessOut {
    pub f: Vec<String>,
    pub random_attempts: Option<u32>,
    pub rd_finite: bool,
    pub rh_finite: bool,
    pub lf_direction: Option<Vec<String>>,
    pub c_h: String,
    pub kappa: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectionOut {
    pub c_raw: Vec<String>,
    /// After rescaling `t` so that `c_0 = 1`.
    pub c: Vec<String>,
    pub t_scale: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootChoiceOut {
    pub equation: usize,
    pub polynomial: String,
    pub candidates: Vec<String>,
    pub chosen: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BirkhoffOut {
    pub nu1: Vec<String>,
    pub root_choices: Vec<RootChoiceOut>,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumSide {
    /// In basis order.
    pub tuple: Vec<String>,
    pub sorted: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumOut {
    pub nu1: Vec<String>,
    pub nu2: Vec<String>,
    pub nu3: Vec<String>,
    pub k: u32,
    pub t0: SpectrumSide,
    /// Rationality at `t = 0` is observed, not proved.
    pub t0_label: &'static str,
    pub generic: SpectrumSide,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyOut {
    pub semisimple_exponents: Vec<String>,
    pub jordan_blocks: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

impl From<&MonodromyData> for MonodromyOut {
    fn from(m: &MonodromyData) -> Self {
        MonodromyOut {
            semisimple_exponents: qs(&m.semisimple_exponents),
            jordan_blocks: m.jordan_blocks.clone(),
            blocks: m.blocks.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureOut {
    pub extra_symmetry: bool,
    pub t0_symmetry: bool,
    pub residues_symmetric: bool,
    pub min_mult: usize,
    pub predicted_s_support: Vec<(usize, usize)>,
    pub s_t_exponent: u32,
    pub flat_indices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusOut {
    pub b0_t_coefficient: String,
    pub binfty_diag: Vec<String>,
    pub pairing_support: Vec<(usize, usize)>,
    pub primitive_candidates: Vec<usize>,
    pub t0_primitive: usize,
    pub t0_binfty_diag: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TConnectionOut {
    pub diagonal: Vec<String>,
    pub c0: String,
    pub non_reductive_warning: bool,
    pub flatness_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceOut {
    pub branches: usize,
    pub spectra_agree: bool,
    pub monodromy_agrees: bool,
    pub scan_order_agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepCounts {
    pub algorithm1_moves: usize,
    pub algorithm2_moves: usize,
    pub root_choices: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub kind: &'static str,
    pub input: InputEcho,
    pub divisor: DivisorOut,
    pub finiteness: FinitenessOut,
    pub connection: ConnectionOut,
    pub birkhoff: BirkhoffOut,
    pub spectrum: SpectrumOut,
    pub monodromy_generic: MonodromyOut,
    pub monodromy_t0: MonodromyOut,
    pub residues: Vec<String>,
    pub conjecture: ConjectureOut,
    pub frobenius: FrobeniusOut,
    pub t_connection: TConnectionOut,
    pub invariance: Option<InvarianceOut>,
    pub steps: StepCounts,
}

impl AnalysisReport {
    pub fn new(input: InputEcho, a: &Analysis) -> Self {
        let s = &a.spectrum;
        let cert = &a.certificate;
        AnalysisReport {
            schema_version: SCHEMA_VERSION,
            kind: "analysis",
            input,
            divisor: DivisorOut::new(&a.divisor, a.hessian.as_ref(), a.b0.as_ref()),
            finiteness: FinitenessOut {
                f: qs(a.section.coefficients()),
                random_attempts: a.random_attempts,
                rd_finite: cert.rd_finite,
                rh_finite: cert.rh_finite,
                lf_direction: cert.lf_direction.as_deref().map(qs),
                c_h: q(&cert.c_h),
                kappa: q(&cert.kappa),
            },
            connection: ConnectionOut {
                c_raw: qs(&a.connection_raw.c),
                c: qs(&a.connection.c),
                t_scale: q(&a.connection.t_scale),
            },
            birkhoff: BirkhoffOut {
                nu1: qs(&a.birkhoff.nu1),
                root_choices: a
                    .birkhoff
                    .root_log
                    .iter()
                    .map(|r| RootChoiceOut {
                        equation: r.equation,
                        polynomial: r.polynomial.to_string(),
                        candidates: qs(&r.candidates),
                        chosen: q(&r.chosen),
                    })
                    .collect(),
                verified: verify_birkhoff(&a.birkhoff, &a.connection).holds,
            },
            spectrum: SpectrumOut {
                nu1: qs(&s.nu1),
                nu2: qs(&s.nu2),
                nu3: qs(&s.nu3),
                k: s.k,
                t0: SpectrumSide {
                    tuple: qs(&s.nu2),
                    sorted: sorted(&s.spectrum_t0),
                },
                t0_label: "empirical-rational",
                generic: SpectrumSide {
                    tuple: qs(&s.nu3),
                    sorted: sorted(&s.spectrum_generic),
                },
            },
            monodromy_generic: (&a.monodromy_generic).into(),
            monodromy_t0: (&a.monodromy_t0).into(),
            residues: qs(&a.conjecture.residues),
            conjecture: ConjectureOut {
                extra_symmetry: a.conjecture.extra_symmetry,
                t0_symmetry: a.conjecture.t0_symmetry,
                residues_symmetric: a.conjecture.residues_symmetric,
                min_mult: a.conjecture.min_mult,
                predicted_s_support: a.conjecture.predicted_s_support.clone(),
                s_t_exponent: a.conjecture.s_t_exponent,
                flat_indices: a.conjecture.flat_indices.clone(),
            },
            frobenius: FrobeniusOut {
                b0_t_coefficient: q(&a.frobenius.b0_t_coefficient),
                binfty_diag: qs(&a.frobenius.binfty_diag),
                pairing_support: a.frobenius.pairing_support.clone(),
                primitive_candidates: a.frobenius.primitive_candidates.clone(),
                t0_primitive: a.frobenius.t0_primitive,
                t0_binfty_diag: qs(&a.frobenius.t0_binfty_diag),
            },
            t_connection: TConnectionOut {
                diagonal: qs(&a.t_connection.diagonal),
                c0: q(&a.t_connection.c0),
                non_reductive_warning: a.t_connection.non_reductive_warning,
                flatness_holds: a.t_connection.flatness_holds,
            },
            invariance: a.invariance.as_ref().map(|i| InvarianceOut {
                branches: i.branches,
                spectra_agree: i.spectra_agree,
                monodromy_agrees: i.monodromy_agrees,
                scan_order_agrees: i.scan_order_agrees,
            }),
            steps: StepCounts {
                algorithm1_moves: s.alg1_log.len(),
                algorithm2_moves: s.alg2_log.len(),
                root_choices: a.birkhoff.root_log.len(),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub kind: &'static str,
    pub input: InputEcho,
    pub divisor: DivisorOut,
    pub all_checks_pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorOut {
    pub code: &'static str,
    pub module: &'static str,
    pub class: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    pub schema_version: u32,
    pub kind: &'static str,
    pub input: Option<InputEcho>,
    pub error: ErrorOut,
}

pub fn to_json<T: Serialize>(r: &T) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report types serialize");
    s.push('\n');
    s
}
