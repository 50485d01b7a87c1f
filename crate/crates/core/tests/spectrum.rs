mod common;

use common::{ints, q, sorted};
use linfree_core::exactalg::{int, Rational};
use linfree_core::spectrum::{
    algorithm1, algorithm1_ordered, algorithm2, algorithm2_ordered, compute_spectrum,
    compute_spectrum_ordered, conjecture_report, frac, monodromy, primitive_candidates,
    residue_eigenvalues, vplus_verify, Mode, Move, ScanOrder,
};
use num_traits::Zero;
use proptest::prelude::*;

fn total(v: &[Rational]) -> Rational {
    v.iter().fold(Rational::zero(), |a, x| a + x)
}

#[test]
fn algorithm1_examples() {
    let (nu, log) = algorithm1(&[int(0), q(7, 4), q(5, 4)]).unwrap();
    assert_eq!(nu, vec![q(3, 4), int(1), q(5, 4)]);
    assert_eq!(
        log,
        vec![Move {
            first: 1,
            second: 2
        }]
    );

    let (nu, log) = algorithm1(&ints(&[0, 1, 2])).unwrap();
    assert_eq!(nu, ints(&[0, 1, 2]));
    assert!(log.is_empty());

    let (nu, log) = algorithm1(&ints(&[0, 3, 2, 3, 4, 3])).unwrap();
    assert_eq!(nu, ints(&[2, 1, 2, 3, 4, 3]));
    assert_eq!(
        log,
        vec![Move {
            first: 1,
            second: 2
        }]
    );
}

#[test]
fn algorithm2_examples() {
    let (nu, k, log) = algorithm2(&ints(&[2, 1, 2, 3, 4, 3])).unwrap();
    assert_eq!((nu, k), (ints(&[2, 1, 2, 3, 4, 3]), 0));
    assert!(log.is_empty());
    for n in 1..=8 {
        let v: Vec<Rational> = (0..n).map(int).collect();
        let (nu, k, _) = algorithm2(&v).unwrap();
        assert_eq!((nu, k), (v, 0));
    }
    // ν_1 - ν_n = 2: one wrap-around move, after which the gap is gone.
    let (nu, k, log) = algorithm2(&[int(3), q(3, 2), int(1)]).unwrap();
    assert_eq!(k, 1);
    assert_eq!(
        log[0],
        Move {
            first: 1,
            second: 3
        }
    );
    assert_eq!(nu, vec![int(2), q(3, 2), int(2)]);
    assert!(&nu[0] - &nu[2] < int(2));
}

#[test]
fn vplus_examples() {
    assert!(vplus_verify(&ints(&[2, 1, 2, 3, 4, 3]), Mode::Generic));
    assert!(!vplus_verify(&ints(&[0, 2]), Mode::T0));
    assert!(vplus_verify(&ints(&[0, 1]), Mode::Generic));
    assert!(vplus_verify(&ints(&[3, 2]), Mode::T0));
    assert!(vplus_verify(&ints(&[3, 2]), Mode::Generic));
    assert!(vplus_verify(&ints(&[4, 2]), Mode::T0));
    assert!(!vplus_verify(&ints(&[4, 2]), Mode::Generic));
    assert!(!vplus_verify(&ints(&[4, 3, 2]), Mode::Generic));
}

#[test]
fn monodromy_examples() {
    for n in 1..=8 {
        let nu: Vec<Rational> = (0..n).map(int).collect();
        let m = monodromy(&nu, Mode::Generic);
        assert_eq!(m.jordan_blocks, vec![n as usize]);
        assert!(m.semisimple_exponents.iter().all(Zero::is_zero));
    }
    let star = monodromy(&ints(&[2, 1, 2, 3, 4, 3]), Mode::Generic);
    assert_eq!(star.jordan_blocks, vec![1, 4, 1]);
    assert_eq!(star.blocks, vec![vec![1], vec![2, 3, 4, 5], vec![6]]);

    let sym = monodromy(&[q(3, 4), int(1), q(5, 4)], Mode::Generic);
    assert_eq!(sym.jordan_blocks, vec![1, 1, 1]);
    assert_eq!(sym.semisimple_exponents, vec![q(3, 4), int(0), q(1, 4)]);

    // The wrap link joins the last run to the first one.
    let wrap = monodromy(&ints(&[3, 5, 1, 2]), Mode::Generic);
    assert_eq!(wrap.blocks, vec![vec![2], vec![3, 4, 1]]);
    assert_eq!(
        monodromy(&ints(&[3, 5, 1, 2]), Mode::T0).jordan_blocks,
        vec![1, 1, 2]
    );
}

#[test]
fn fractional_part() {
    assert_eq!(frac(&q(-1, 4)), q(3, 4));
    assert_eq!(frac(&q(9, 4)), q(1, 4));
    assert_eq!(frac(&int(-2)), int(0));
}

#[test]
fn residue_examples() {
    assert_eq!(
        residue_eigenvalues(&ints(&[2, 1, 2, 3, 4, 3]), 0),
        vec![q(-1, 3), int(0), int(0), int(0), int(0), q(1, 3)]
    );
    assert!(residue_eigenvalues(&ints(&[0, 1, 2, 3]), 0)
        .iter()
        .all(Zero::is_zero));
    // k shifts every residue by k.
    assert_eq!(
        residue_eigenvalues(&ints(&[3, 4]), 1),
        vec![int(-1) / int(2), int(-1) / int(2)]
    );
}

#[test]
fn conjecture_report_star3() {
    let nu = ints(&[2, 1, 2, 3, 4, 3]);
    let r = conjecture_report(&nu, &nu, 0);
    assert!(r.extra_symmetry && r.t0_symmetry && r.residues_symmetric);
    assert_eq!(r.min_mult, 1);
    assert!(r.flat_indices.contains(&2));
    assert_eq!(r.flat_indices, vec![2, 3, 4, 5]);
    assert_eq!(
        r.predicted_s_support,
        (1..=6).map(|i| (i, 7 - i)).collect::<Vec<_>>()
    );
    assert_eq!(
        primitive_candidates(&nu, r.min_mult),
        vec![1, 2, 3, 4, 5, 6]
    );
}

#[test]
fn conjecture_report_normal_crossing() {
    let nu = ints(&[0, 1, 2, 3, 4]);
    let r = conjecture_report(&nu, &nu, 0);
    assert!(r.extra_symmetry);
    assert_eq!(r.flat_indices, vec![1, 2, 3, 4, 5]);
}

#[test]
fn symmetric_5x5_spectrum_has_a_double_minimum() {
    let nu = vec![
        int(6),
        q(53, 8),
        int(7),
        q(27, 4),
        int(7),
        q(55, 8),
        int(6),
        int(7),
        int(8),
        q(57, 8),
        int(7),
        q(29, 4),
        int(7),
        q(59, 8),
        int(8),
    ];
    assert!(vplus_verify(&nu, Mode::Generic));
    let r = conjecture_report(&nu, &nu, 0);
    assert_eq!(r.min_mult, 2);
    assert!(r.extra_symmetry);
    assert_eq!(primitive_candidates(&nu, r.min_mult), vec![1, 7]);
    assert_eq!(total(&nu), int(105));
}

#[test]
fn spectrum_pipeline_on_published_inputs() {
    let s = compute_spectrum(&ints(&[0, 3, 2, 3, 4, 3])).unwrap();
    assert_eq!(s.spectrum_t0, ints(&[1, 2, 2, 3, 3, 4]));
    assert_eq!(s.spectrum_generic, ints(&[1, 2, 2, 3, 3, 4]));
    assert_eq!(s.k, 0);
    let s = compute_spectrum(&[int(0), q(7, 4), q(5, 4)]).unwrap();
    assert_eq!(s.spectrum_generic, vec![q(3, 4), int(1), q(5, 4)]);
}

fn arb_nu(max_n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-12i64..=12, 1i64..=4), 1..=max_n)
        .prop_map(|v| v.into_iter().map(|(a, b)| q(a, b)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn scan_order_does_not_change_the_spectrum(nu in arb_nu(8)) {
        let (a, _) = algorithm1_ordered(&nu, ScanOrder::SmallestFirst).unwrap();
        let (b, _) = algorithm1_ordered(&nu, ScanOrder::LargestFirst).unwrap();
        prop_assert_eq!(sorted(&a), sorted(&b));
        let (a3, ka, _) = algorithm2_ordered(&a, ScanOrder::SmallestFirst).unwrap();
        let (b3, kb, _) = algorithm2_ordered(&b, ScanOrder::LargestFirst).unwrap();
        prop_assert_eq!(sorted(&a3), sorted(&b3));
        prop_assert_eq!(ka, kb);
        let x = compute_spectrum_ordered(&nu, ScanOrder::SmallestFirst).unwrap();
        let y = compute_spectrum_ordered(&nu, ScanOrder::LargestFirst).unwrap();
        prop_assert_eq!(x.spectrum_t0, y.spectrum_t0);
        prop_assert_eq!(x.spectrum_generic, y.spectrum_generic);
    }

    #[test]
    fn outputs_satisfy_vplus_and_conserve_the_trace(nu in arb_nu(8)) {
        let s = compute_spectrum(&nu).unwrap();
        prop_assert!(vplus_verify(&s.nu2, Mode::T0));
        prop_assert!(vplus_verify(&s.nu3, Mode::Generic));
        prop_assert_eq!(total(&s.nu1), total(&s.nu2));
        prop_assert_eq!(total(&s.nu2), total(&s.nu3));
        // Every move changes one entry by +1 and one by -1.
        let frac_sorted = |v: &[Rational]| sorted(&v.iter().map(frac).collect::<Vec<_>>());
        prop_assert_eq!(frac_sorted(&s.nu1), frac_sorted(&s.nu3));
    }

    #[test]
    fn fixpoints_are_left_alone(nu in arb_nu(8)) {
        let s = compute_spectrum(&nu).unwrap();
        let again = compute_spectrum(&s.nu3).unwrap();
        prop_assert_eq!(again.nu3, s.nu3.clone());
        prop_assert_eq!(again.k, 0);
        prop_assert!(again.alg1_log.is_empty() && again.alg2_log.is_empty());
    }
}
