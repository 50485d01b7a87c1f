//! Invariance under a random linear change of coordinates, plus the
//! structural properties every successful analysis must satisfy.

mod common;

use common::{section, sorted, star3_f};
use linfree_core::birkhoff::verify_birkhoff;
use linfree_core::catalog::{family, FamilyId};
use linfree_core::divisor::{LfdPresentation, Reductive};
use linfree_core::exactalg::{apply_derivation, int, squarefree_test, Rational, RationalMatrix};
use linfree_core::pipeline::{analyze, Analysis, Options, SectionChoice};
use linfree_core::sections::LinearSection;
use linfree_core::spectrum::{vplus_verify, Mode};
use num_traits::Zero;
use rand::{Rng, SeedableRng};

fn random_gl(n: usize, seed: u64) -> (RationalMatrix, RationalMatrix) {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g = RationalMatrix::from_fn(n, n, |_, _| int(rng.gen_range(-2..=2)));
        if let Some(inv) = g.inverse() {
            return (g, inv);
        }
    }
}

/// The same divisor in the coordinates `y = g x`.
fn conjugate(
    p: &LfdPresentation,
    f: &LinearSection,
    seed: u64,
) -> (LfdPresentation, LinearSection) {
    let (g, inv) = random_gl(p.n, seed);
    let basis = p.lie_basis.iter().map(|a| &(&g * a) * &inv).collect();
    let q = LfdPresentation::new(format!("{}~{seed}", p.name), basis).unwrap();
    (
        q,
        LinearSection::new(inv.vec_mul(f.coefficients())).unwrap(),
    )
}

fn check_properties(a: &Analysis) {
    let d = &a.divisor;
    let n = d.n;
    assert_eq!(d.h.homogeneous_degree(), Some(n as u32));
    assert!(squarefree_test(&d.h).unwrap());
    for x in &d.log_h_basis {
        assert!(apply_derivation(x, &d.h).unwrap().is_zero());
    }
    assert_eq!(d.special, d.log_h_basis.iter().all(|x| x.trace().is_zero()));
    if d.special {
        assert!(a.connection.c[n].is_zero());
    }
    if d.reductive == Reductive::Yes {
        assert!(d.special);
    }
    if let Some(h) = &a.hessian {
        assert!(h.matches_expected);
    }
    let spec = &a.spectrum.spectrum_generic;
    for i in 0..n {
        assert_eq!(&spec[i] + &spec[n - 1 - i], int(n as i64 - 1));
    }
    let total = |v: &[Rational]| v.iter().fold(Rational::zero(), |s, x| s + x);
    assert_eq!(total(spec), int((n * (n - 1) / 2) as i64));
    assert!(vplus_verify(&a.spectrum.nu2, Mode::T0));
    assert!(vplus_verify(&a.spectrum.nu3, Mode::Generic));
    assert_eq!(total(&a.spectrum.nu1), total(&a.spectrum.nu2));
    assert_eq!(total(&a.spectrum.nu2), total(&a.spectrum.nu3));
    assert!(verify_birkhoff(&a.birkhoff, &a.connection).holds);
    let inv = a.invariance.as_ref().expect("requested");
    assert!(inv.spectra_agree && inv.monodromy_agrees && inv.scan_order_agrees);
}

fn cases() -> Vec<(LfdPresentation, LinearSection)> {
    let fam = |s: &str| family(FamilyId::parse(s).unwrap()).unwrap();
    vec![
        (fam("nc:2"), section(&[1, 1])),
        (fam("nc:3"), section(&[1, 1, 1])),
        (fam("nc:4"), section(&[1, 1, 1, 1])),
        (fam("sym:2"), section(&[1, 0, 1])),
        (fam("star:3"), star3_f()),
    ]
}

#[test]
fn catalog_instances_satisfy_the_properties() {
    let opts = Options {
        branch_cap: Some(256),
        ..Options::default()
    };
    for (p, f) in cases() {
        let a = analyze(&p, &SectionChoice::Given(f), &opts).unwrap();
        check_properties(&a);
    }
}

#[test]
fn random_coordinate_changes_preserve_everything() {
    let opts = Options {
        branch_cap: Some(64),
        ..Options::default()
    };
    let cases = cases();
    let reference: Vec<Analysis> = cases
        .iter()
        .map(|(p, f)| analyze(p, &SectionChoice::Given(f.clone()), &opts).unwrap())
        .collect();
    for seed in 0..100u64 {
        let idx = seed as usize % cases.len();
        let (p, f) = &cases[idx];
        let (q, g) = conjugate(p, f, seed);
        let a = analyze(&q, &SectionChoice::Given(g), &opts).unwrap();
        check_properties(&a);
        let r = &reference[idx];
        assert_eq!(a.connection.c, r.connection.c, "{}", q.name);
        assert_eq!(a.divisor.special, r.divisor.special);
        assert_eq!(a.divisor.reductive, r.divisor.reductive);
        assert_eq!(a.spectrum.spectrum_generic, r.spectrum.spectrum_generic);
        assert_eq!(sorted(&a.spectrum.nu2), sorted(&r.spectrum.nu2));
        assert_eq!(
            a.monodromy_generic.jordan_blocks,
            r.monodromy_generic.jordan_blocks
        );
    }
}
