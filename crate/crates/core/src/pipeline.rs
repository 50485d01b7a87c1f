//! End-to-end analysis of one presentation and one linear section.

use alloc::string::String;
use alloc::vec::Vec;

use crate::birkhoff::{enumerate_branches, solve_birkhoff, BirkhoffSolution};
use crate::catalog::random_finite_f_for;
use crate::divisor::{
    analyze_divisor, b0_check, hessian_identity_check, B0Report, DivisorData, HessianReport,
    LfdPresentation, DEFAULT_MAX_MONOMIALS,
};
use crate::gaussmanin::{
    check_degree_cap, connection_matrix, normalize_c0, t_connection_matrix, ConnectionCoefficients,
    TConnection,
};
use crate::sections::{rh_finiteness, FinitenessCertificate, LinearSection};
use crate::spectrum::{
    compute_spectrum, compute_spectrum_ordered, conjecture_report, frobenius_initial_data,
    monodromy, ConjectureReport, FrobeniusInitialData, Mode, MonodromyData, ScanOrder,
    SpectrumResult,
};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub enum SectionChoice {
    Given(LinearSection),
    Random(u64),
}

#[derive(Clone, Debug)]
pub struct Options {
    pub max_monomials: u128,
    /// Also run every root-choice branch of the Birkhoff system (up to this
    /// many) and both Algorithm 1 scan orders, and compare the spectra.
    pub branch_cap: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_monomials: DEFAULT_MAX_MONOMIALS,
            branch_cap: None,
        }
    }
}

/// Outcome of the optional cross-checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceCheck {
    pub branches: usize,
    pub spectra_agree: bool,
    pub monodromy_agrees: bool,
    pub scan_order_agrees: bool,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub name: String,
    pub n: usize,
    pub divisor: DivisorData,
    pub hessian: Option<HessianReport>,
    pub b0: Option<B0Report>,
    pub section: LinearSection,
    /// Number of draws when the section was sampled.
    pub random_attempts: Option<u32>,
    pub certificate: FinitenessCertificate,
    pub connection_raw: ConnectionCoefficients,
    pub connection: ConnectionCoefficients,
    pub birkhoff: BirkhoffSolution,
    pub spectrum: SpectrumResult,
    pub monodromy_generic: MonodromyData,
    pub monodromy_t0: MonodromyData,
    pub conjecture: ConjectureReport,
    pub frobenius: FrobeniusInitialData,
    pub t_connection: TConnection,
    pub invariance: Option<InvarianceCheck>,
}

pub fn analyze(p: &LfdPresentation, choice: &SectionChoice, opts: &Options) -> Result<Analysis> {
    check_degree_cap(p.n, opts.max_monomials)?;
    let divisor = analyze_divisor(p, opts.max_monomials)?;
    let hessian = if divisor.n >= 2 && !divisor.h_dual.is_zero() {
        Some(hessian_identity_check(&divisor)?)
    } else {
        None
    };
    let b0 = b0_check(&divisor)?;
    let (section, random_attempts) = match choice {
        SectionChoice::Given(f) => (f.clone(), None),
        SectionChoice::Random(seed) => {
            let r = random_finite_f_for(&divisor, *seed)?;
            (r.section, Some(r.attempts))
        }
    };
    let certificate = rh_finiteness(&section, &divisor)?;
    if !certificate.rh_finite {
        return Err(Error::NotFinite);
    }
    let connection_raw = connection_matrix(&divisor, &certificate)?;
    let connection = normalize_c0(&connection_raw)?;
    let birkhoff = solve_birkhoff(&connection, divisor.special)?;
    let spectrum = compute_spectrum(&birkhoff.nu1)?;
    let monodromy_generic = monodromy(&spectrum.nu3, Mode::Generic);
    let monodromy_t0 = monodromy(&spectrum.nu2, Mode::T0);
    let conjecture = conjecture_report(&spectrum.nu2, &spectrum.nu3, spectrum.k);
    let frobenius = frobenius_initial_data(&spectrum, &connection.c[0], &conjecture);
    let reductive = divisor.reductive == crate::divisor::Reductive::Yes;
    let t_connection = t_connection_matrix(&spectrum.nu3, spectrum.k, &connection.c[0], reductive);
    let invariance = match opts.branch_cap {
        Some(cap) => Some(invariance_check(
            &connection,
            divisor.special,
            &spectrum,
            &monodromy_generic,
            cap,
        )?),
        None => None,
    };
    Ok(Analysis {
        name: p.name.clone(),
        n: p.n,
        divisor,
        hessian,
        b0,
        section,
        random_attempts,
        certificate,
        connection_raw,
        connection,
        birkhoff,
        spectrum,
        monodromy_generic,
        monodromy_t0,
        conjecture,
        frobenius,
        t_connection,
        invariance,
    })
}

fn sorted_blocks(m: &MonodromyData) -> Vec<usize> {
    let mut b = m.jordan_blocks.clone();
    b.sort_unstable();
    b
}

/// Re-runs the spectrum stage on every Birkhoff branch and with the other
/// Algorithm 1 scan order.
pub fn invariance_check(
    cc: &ConnectionCoefficients,
    special: bool,
    reference: &SpectrumResult,
    reference_monodromy: &MonodromyData,
    cap: usize,
) -> Result<InvarianceCheck> {
    let branches = enumerate_branches(cc, special, cap)?;
    let ref_blocks = sorted_blocks(reference_monodromy);
    let mut spectra_agree = true;
    let mut monodromy_agrees = true;
    for b in &branches {
        let s = compute_spectrum(&b.nu1)?;
        spectra_agree &= s.spectrum_generic == reference.spectrum_generic
            && s.spectrum_t0 == reference.spectrum_t0;
        monodromy_agrees &= sorted_blocks(&monodromy(&s.nu3, Mode::Generic)) == ref_blocks;
    }
    let other = compute_spectrum_ordered(&reference.nu1, ScanOrder::LargestFirst)?;
    let scan_order_agrees = other.spectrum_generic == reference.spectrum_generic
        && other.spectrum_t0 == reference.spectrum_t0;
    Ok(InvarianceCheck {
        branches: branches.len(),
        spectra_agree,
        monodromy_agrees,
        scan_order_agrees,
    })
}
