//! From a Birkhoff solution to spectral numbers.
//!
//! Algorithm 1 repairs gaps `ν_i - ν_(i-1) > 1` by the exchange
//! `(ν_(i-1), ν_i) ← (ν_i - 1, ν_(i-1) + 1)`; the result is the spectrum at
//! `t = 0`. Algorithm 2 additionally repairs the wrap-around gap
//! `ν_1 - ν_n > 1` with a meromorphic base change (one factor of `t` each
//! time), which gives the spectrum for `t ≠ 0`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactalg::{int, Rational, RationalMatrix};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    T0,
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanOrder {
    SmallestFirst,
    LargestFirst,
}

/// One exchange: indices are 1-based, `(i-1, i)` for Algorithm 1 and `(1, n)`
/// for Algorithm 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Move {
    pub first: usize,
    pub second: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumResult {
    pub nu1: Vec<Rational>,
    pub nu2: Vec<Rational>,
    pub nu3: Vec<Rational>,
    pub k: u32,
    pub alg1_log: Vec<Move>,
    pub alg2_log: Vec<Move>,
    pub spectrum_t0: Vec<Rational>,
    pub spectrum_generic: Vec<Rational>,
}

fn budget(n: usize) -> usize {
    n * n * n + 10 * n
}

fn sorted(v: &[Rational]) -> Vec<Rational> {
    let mut s = v.to_vec();
    s.sort();
    s
}

pub fn algorithm1(nu1: &[Rational]) -> Result<(Vec<Rational>, Vec<Move>)> {
    algorithm1_ordered(nu1, ScanOrder::SmallestFirst)
}

pub fn algorithm1_ordered(
    nu1: &[Rational],
    order: ScanOrder,
) -> Result<(Vec<Rational>, Vec<Move>)> {
    let mut nu = nu1.to_vec();
    let mut log = Vec::new();
    let limit = budget(nu.len());
    apply_algorithm1(&mut nu, order, &mut log, limit)?;
    Ok((nu, log))
}

fn apply_algorithm1(
    nu: &mut [Rational],
    order: ScanOrder,
    log: &mut Vec<Move>,
    limit: usize,
) -> Result<()> {
    let one = Rational::one();
    let n = nu.len();
    loop {
        let violating = |i: &usize| &nu[*i] - &nu[*i - 1] > one;
        let found = match order {
            ScanOrder::SmallestFirst => (1..n).find(violating),
            ScanOrder::LargestFirst => (1..n).rev().find(violating),
        };
        let Some(i) = found else { return Ok(()) };
        if log.len() >= limit {
            return Err(Error::StepBudgetExceeded { algorithm: 1 });
        }
        let a = &nu[i] - &one;
        let b = &nu[i - 1] + &one;
        nu[i - 1] = a;
        nu[i] = b;
        log.push(Move {
            first: i,
            second: i + 1,
        });
    }
}

/// Returns `ν^(3)`, the number `k` of meromorphic steps and every move in
/// order: wrap-around moves are `(1, n)`, the rest come from the re-runs of
/// Algorithm 1.
pub fn algorithm2(nu2: &[Rational]) -> Result<(Vec<Rational>, u32, Vec<Move>)> {
    algorithm2_ordered(nu2, ScanOrder::SmallestFirst)
}

pub fn algorithm2_ordered(
    nu2: &[Rational],
    order: ScanOrder,
) -> Result<(Vec<Rational>, u32, Vec<Move>)> {
    let n = nu2.len();
    let mut nu = nu2.to_vec();
    let mut k = 0u32;
    let mut log = Vec::new();
    if n < 2 {
        return Ok((nu, 0, log));
    }
    let one = Rational::one();
    let limit = budget(n);
    while &nu[0] - &nu[n - 1] > one {
        if log.len() >= limit {
            return Err(Error::StepBudgetExceeded { algorithm: 2 });
        }
        let a = &nu[n - 1] + &one;
        let b = &nu[0] - &one;
        nu[0] = a;
        nu[n - 1] = b;
        k += 1;
        log.push(Move {
            first: 1,
            second: n,
        });
        apply_algorithm1(&mut nu, order, &mut log, limit)?;
    }
    Ok((nu, k, log))
}

pub fn vplus_verify(nu: &[Rational], mode: Mode) -> bool {
    let one = Rational::one();
    let n = nu.len();
    let adjacent = (1..n).all(|i| &nu[i] - &nu[i - 1] <= one);
    match mode {
        Mode::T0 => adjacent,
        Mode::Generic => adjacent && (n < 2 || &nu[0] - &nu[n - 1] <= one),
    }
}

pub fn compute_spectrum(nu1: &[Rational]) -> Result<SpectrumResult> {
    compute_spectrum_ordered(nu1, ScanOrder::SmallestFirst)
}

pub fn compute_spectrum_ordered(nu1: &[Rational], order: ScanOrder) -> Result<SpectrumResult> {
    let (nu2, alg1_log) = algorithm1_ordered(nu1, order)?;
    let (nu3, k, alg2_log) = algorithm2_ordered(&nu2, order)?;
    if !vplus_verify(&nu2, Mode::T0) || !vplus_verify(&nu3, Mode::Generic) {
        return Err(Error::InconsistentSystem(
            "algorithm output violates the V+ inequalities".into(),
        ));
    }
    Ok(SpectrumResult {
        nu1: nu1.to_vec(),
        spectrum_t0: sorted(&nu2),
        spectrum_generic: sorted(&nu3),
        nu2,
        nu3,
        k,
        alg1_log,
        alg2_log,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyData {
    /// `ν_i mod 1` in `[0, 1)`; the eigenvalue is `exp(-2πi ν_i)`.
    pub semisimple_exponents: Vec<Rational>,
    /// Sizes of the Jordan blocks of the nilpotent part, in basis order.
    pub jordan_blocks: Vec<usize>,
    /// The blocks themselves as 1-based index lists.
    pub blocks: Vec<Vec<usize>>,
}

pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

/// Jordan blocks are chains of links `i → i+1` with `ν_(i+1) - ν_i = 1`; for
/// `t ≠ 0` there is also the link `n → 1` when `ν_1 - ν_n = 1`.
pub fn monodromy(nu: &[Rational], mode: Mode) -> MonodromyData {
    let n = nu.len();
    let one = Rational::one();
    let semisimple_exponents = nu.iter().map(frac).collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if i > 0 && &nu[i] - &nu[i - 1] == one {
            blocks.last_mut().expect("started").push(i + 1);
        } else {
            blocks.push(vec![i + 1]);
        }
    }
    if mode == Mode::Generic && n > 1 && blocks.len() > 1 && &nu[0] - &nu[n - 1] == one {
        let first = blocks.remove(0);
        blocks.last_mut().expect("two blocks").extend(first);
    }
    MonodromyData {
        semisimple_exponents,
        jordan_blocks: blocks.iter().map(Vec::len).collect(),
        blocks,
    }
}

/// `r_i = (i - 1 + k n - ν_i) / n`.
pub fn residue_eigenvalues(nu3: &[Rational], k: u32) -> Vec<Rational> {
    let n = nu3.len();
    let nn = int(n as i64);
    let kn = int(k as i64 * n as i64);
    nu3.iter()
        .enumerate()
        .map(|(i, v)| (int(i as i64) + &kn - v) / &nn)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    /// `ν^(3)_i + ν^(3)_(n+1-i) = n - 1` for all `i`.
    pub extra_symmetry: bool,
    /// The same for `ν^(2)`.
    pub t0_symmetry: bool,
    pub min_mult: usize,
    pub residues: Vec<Rational>,
    /// The residue multiset is symmetric about 0.
    pub residues_symmetric: bool,
    /// Pairs `(i, n+1-i)` where the pairing is predicted to be `c t^(2k) τ^(1-n)`.
    pub predicted_s_support: Vec<(usize, usize)>,
    pub s_t_exponent: u32,
    /// Indices with residue zero, `ν^(3)_i = i - 1 + k n`, 1-based.
    pub flat_indices: Vec<usize>,
}

fn pair_symmetric(nu: &[Rational]) -> bool {
    let n = nu.len();
    let target = int(n as i64 - 1);
    (0..n).all(|i| &nu[i] + &nu[n - 1 - i] == target)
}

pub fn conjecture_report(nu2: &[Rational], nu3: &[Rational], k: u32) -> ConjectureReport {
    let n = nu3.len();
    let residues = residue_eigenvalues(nu3, k);
    let sr = sorted(&residues);
    let residues_symmetric = (0..n).all(|i| (&sr[i] + &sr[n - 1 - i]).is_zero());
    let min = nu3.iter().min().cloned().unwrap_or_else(Rational::zero);
    let extra_symmetry = pair_symmetric(nu3);
    let flat_indices = (0..n)
        .filter(|&i| residues[i].is_zero())
        .map(|i| i + 1)
        .collect();
    ConjectureReport {
        extra_symmetry,
        t0_symmetry: pair_symmetric(nu2),
        min_mult: nu3.iter().filter(|v| **v == min).count(),
        residues,
        residues_symmetric,
        predicted_s_support: if extra_symmetry {
            (1..=n).map(|i| (i, n + 1 - i)).collect()
        } else {
            Vec::new()
        },
        s_t_exponent: 2 * k,
        flat_indices,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusInitialData {
    /// `Ω_0 = N + c_0 t E_(1n)`, given by `c_0` with `t` left symbolic.
    pub b0_shift: RationalMatrix,
    pub b0_t_coefficient: Rational,
    pub binfty_diag: Vec<Rational>,
    pub pairing_support: Vec<(usize, usize)>,
    /// 1-based indices of sections usable as primitive homogeneous sections.
    pub primitive_candidates: Vec<usize>,
    pub t0_primitive: usize,
    pub t0_binfty_diag: Vec<Rational>,
}

/// With a simple minimal spectral number every section qualifies; otherwise
/// only those whose spectral number is the minimum.
pub fn primitive_candidates(nu3: &[Rational], min_mult: usize) -> Vec<usize> {
    let n = nu3.len();
    if min_mult == 1 {
        return (1..=n).collect();
    }
    let min = nu3.iter().min().cloned().unwrap_or_else(Rational::zero);
    (0..n).filter(|&i| nu3[i] == min).map(|i| i + 1).collect()
}

pub fn frobenius_initial_data(
    spec: &SpectrumResult,
    c0: &Rational,
    report: &ConjectureReport,
) -> FrobeniusInitialData {
    let n = spec.nu3.len();
    FrobeniusInitialData {
        b0_shift: crate::gaussmanin::shift_matrix(n),
        b0_t_coefficient: c0.clone(),
        binfty_diag: spec.nu3.iter().map(|v| -v).collect(),
        pairing_support: report.predicted_s_support.clone(),
        primitive_candidates: primitive_candidates(&spec.nu3, report.min_mult),
        t0_primitive: 1,
        t0_binfty_diag: spec.nu2.iter().map(|v| -v).collect(),
    }
}
