//! Structural properties every successful analysis must satisfy, and the
//! randomized suites built on them.

use linfree_core::birkhoff::verify_birkhoff;
use linfree_core::catalog::{family, FamilyId};
use linfree_core::divisor::{analyze_divisor, LfdPresentation, Reductive, DEFAULT_MAX_MONOMIALS};
use linfree_core::exactalg::{
    apply_derivation, int, squarefree_test, Monomial, Rational, RationalMatrix, SparsePoly,
};
use linfree_core::pipeline::{analyze, Analysis, Options, SectionChoice};
use linfree_core::sections::{divide, divide_oracle, rh_finiteness, LinearSection};
use linfree_core::spectrum::{vplus_verify, Mode};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::regress::Check;

fn total(v: &[Rational]) -> Rational {
    v.iter().fold(Rational::zero(), |s, x| s + x)
}

fn check(name: &str, ok: bool, detail: impl FnOnce() -> String) -> Check {
    Check {
        name: name.into(),
        expected: "holds".into(),
        got: if ok { "holds".into() } else { detail() },
        ok,
    }
}

/// The invariants of a finished analysis. Root-choice and scan-order
/// invariance are included when the analysis ran with a branch cap.
pub fn property_checks(a: &Analysis) -> Vec<Check> {
    let d = &a.divisor;
    let n = d.n;
    let mut out = Vec::new();
    let deg = d.h.homogeneous_degree();
    let squarefree = squarefree_test(&d.h).unwrap_or(false);
    out.push(check(
        "h squarefree of degree n",
        deg == Some(n as u32) && squarefree,
        || format!("degree {deg:?}, squarefree {squarefree}"),
    ));
    let annihilated = d
        .log_h_basis
        .iter()
        .all(|x| apply_derivation(x, &d.h).is_ok_and(|p| p.is_zero()));
    out.push(check("log-h fields kill h", annihilated, || {
        "some ξ(h) ≠ 0".into()
    }));
    let trace_zero = d.log_h_basis.iter().all(|x| x.trace().is_zero());
    out.push(check(
        "special iff trace zero",
        d.special == trace_zero,
        || format!("special {}, trace zero {trace_zero}", d.special),
    ));
    let cn = &a.connection.c[n];
    out.push(check(
        "special implies c_n = 0",
        !d.special || cn.is_zero(),
        || format!("c_n = {cn}"),
    ));
    out.push(check(
        "reductive implies special",
        d.reductive != Reductive::Yes || d.special,
        || "reductive, not special".into(),
    ));
    if let Some(h) = &a.hessian {
        out.push(check("hessian identity", h.matches_expected, || {
            format!("c = {}, expected {}", h.c, h.expected_c)
        }));
    }
    let spec = &a.spectrum.spectrum_generic;
    let target = int(n as i64 - 1);
    let symmetric = (0..n).all(|i| &spec[i] + &spec[n - 1 - i] == target);
    out.push(check("generic spectrum symmetric", symmetric, || {
        crate::fmt_multiset(spec)
    }));
    let sum = total(spec);
    out.push(check(
        "spectrum sum n(n-1)/2",
        sum == int((n * (n - 1) / 2) as i64),
        || format!("sum {sum}"),
    ));
    let s = &a.spectrum;
    out.push(check(
        "V+ on nu2 and nu3",
        vplus_verify(&s.nu2, Mode::T0) && vplus_verify(&s.nu3, Mode::Generic),
        || "adjacency inequality violated".into(),
    ));
    let conserved = total(&s.nu1) == total(&s.nu2) && total(&s.nu2) == total(&s.nu3);
    out.push(check("sum of nu conserved", conserved, || {
        format!("{} / {} / {}", total(&s.nu1), total(&s.nu2), total(&s.nu3))
    }));
    let bk = verify_birkhoff(&a.birkhoff, &a.connection);
    out.push(check("birkhoff solution verifies", bk.holds, || {
        bk.describe()
    }));
    if let Some(inv) = &a.invariance {
        out.push(check(
            "root-choice invariance",
            inv.spectra_agree && inv.monodromy_agrees,
            || format!("{} branches disagree", inv.branches),
        ));
        out.push(check(
            "scan-order invariance",
            inv.scan_order_agrees,
            || "scan orders disagree".into(),
        ));
    }
    out
}

pub fn random_gl(n: usize, rng: &mut ChaCha8Rng) -> (RationalMatrix, RationalMatrix) {
    loop {
        let g = RationalMatrix::from_fn(n, n, |_, _| int(rng.gen_range(-2..=2)));
        if let Some(inv) = g.inverse() {
            return (g, inv);
        }
    }
}

/// The same divisor and section in the coordinates `y = g x`: every field
/// `A` becomes `g A g⁻¹` and `f` becomes `f ∘ g⁻¹`.
pub fn conjugate(
    p: &LfdPresentation,
    f: &LinearSection,
    g: &RationalMatrix,
    inv: &RationalMatrix,
) -> linfree_core::Result<(LfdPresentation, LinearSection)> {
    let basis = p.lie_basis.iter().map(|a| &(g * a) * inv).collect();
    let q = LfdPresentation::new(format!("{}~", p.name), basis)?;
    Ok((q, LinearSection::new(inv.vec_mul(f.coefficients()))?))
}

/// Outcome of a randomized suite.
#[derive(Clone, Debug, Default)]
pub struct SuiteResult {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Small catalog members with a known finite section, used as seeds for the
/// randomized suites.
pub fn seed_cases() -> Vec<(FamilyId, Vec<i64>)> {
    vec![
        (FamilyId::NormalCrossing(2), vec![1, 1]),
        (FamilyId::NormalCrossing(3), vec![1, 1, 1]),
        (FamilyId::NormalCrossing(4), vec![1, 1, 1, 1]),
        (FamilyId::SymMatrices(2), vec![1, 0, 1]),
        (FamilyId::Star(3), vec![1, 0, 1, 1, 0, 1]),
    ]
}

fn section(v: &[i64]) -> LinearSection {
    LinearSection::new(v.iter().map(|&x| int(x)).collect()).expect("non-empty")
}

/// Runs the pipeline on `count` random linear coordinate changes of the seed
/// cases, checks the invariants, and compares spectrum, monodromy and the
/// normalized connection with the unperturbed run.
pub fn perturbation_suite(count: usize, seed: u64) -> SuiteResult {
    let opts = Options {
        branch_cap: Some(64),
        ..Options::default()
    };
    let cases = seed_cases();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut result = SuiteResult {
        cases: count,
        failures: Vec::new(),
    };
    let mut reference = Vec::new();
    for (id, f) in &cases {
        let p = family(*id).expect("catalog");
        let a = analyze(&p, &SectionChoice::Given(section(f)), &opts).expect("seed case analyses");
        reference.push((p, section(f), a));
    }
    for i in 0..count {
        let (p, f, r) = &reference[i % reference.len()];
        let (g, inv) = random_gl(p.n, &mut rng);
        let label = format!("{} #{i}", p.name);
        let a = match conjugate(p, f, &g, &inv)
            .and_then(|(q, h)| analyze(&q, &SectionChoice::Given(h), &opts))
        {
            Ok(a) => a,
            Err(e) => {
                result.failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        for c in property_checks(&a).into_iter().filter(|c| !c.ok) {
            result
                .failures
                .push(format!("{label}: {} ({})", c.name, c.got));
        }
        let same = a.connection.c == r.connection.c
            && a.spectrum.spectrum_generic == r.spectrum.spectrum_generic
            && a.spectrum.spectrum_t0 == r.spectrum.spectrum_t0
            && a.monodromy_generic.jordan_blocks == r.monodromy_generic.jordan_blocks
            && a.divisor.special == r.divisor.special
            && a.divisor.reductive == r.divisor.reductive;
        if !same {
            result
                .failures
                .push(format!("{label}: differs from the unperturbed analysis"));
        }
    }
    result
}

pub fn random_form(n: usize, deg: u32, terms: usize, rng: &mut ChaCha8Rng) -> SparsePoly {
    let basis = SparsePoly::monomial_basis(n, deg);
    let picked: Vec<(Monomial, Rational)> = (0..terms)
        .map(|_| {
            let m = basis[rng.gen_range(0..basis.len())].clone();
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=4);
            (m, Rational::new(num.into(), den.into()))
        })
        .collect();
    SparsePoly::from_unsorted(n, picked)
}

/// Jacobian-algebra division against the dense linear-algebra oracle on
/// `count` random non-zero homogeneous forms (`n ≤ 6`, degree `≤ 6`).
pub fn division_suite(count: usize, seed: u64) -> SuiteResult {
    let mut cases: Vec<(FamilyId, Vec<i64>)> = seed_cases();
    cases.push((FamilyId::NormalCrossing(5), vec![2, 1, 1, 3, 1]));
    cases.push((FamilyId::NormalCrossing(6), vec![1; 6]));
    cases.push((FamilyId::SymMatrices(3), vec![1, 0, 0, 1, 0, 1]));
    let certs: Vec<_> = cases
        .iter()
        .map(|(id, f)| {
            let d = analyze_divisor(&family(*id).expect("catalog"), DEFAULT_MAX_MONOMIALS)
                .expect("catalog divisor");
            (
                id.to_string(),
                rh_finiteness(&section(f), &d).expect("finite"),
            )
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut result = SuiteResult {
        cases: 0,
        failures: Vec::new(),
    };
    while result.cases < count {
        let (name, cert) = &certs[rng.gen_range(0..certs.len())];
        let deg = rng.gen_range(0..=6);
        let terms = rng.gen_range(1..6);
        let g = random_form(cert.n(), deg, terms, &mut rng);
        if g.is_zero() {
            continue;
        }
        result.cases += 1;
        let agree = match (divide(&g, cert), divide_oracle(&g, cert)) {
            (Ok(a), Ok(b)) => {
                a.c == b.c
                    && a.power_index == b.power_index
                    && a.h_power == b.h_power
                    && a.reconstruct(cert) == g
                    && b.reconstruct(cert) == g
            }
            _ => false,
        };
        if !agree {
            result.failures.push(format!("{name}: g = {g}"));
        }
    }
    result
}
