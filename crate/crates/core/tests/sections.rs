mod common;

use common::{ints, poly, section, star3_f};
use linfree_core::catalog::{family, FamilyId};
use linfree_core::divisor::{analyze_divisor, DivisorData, DEFAULT_MAX_MONOMIALS};
use linfree_core::exactalg::{int, Monomial, Rational, SparsePoly};
use linfree_core::sections::{
    divide, divide_graded, divide_oracle, rd_finiteness, rh_finiteness, FinitenessCertificate,
    LinearSection,
};
use linfree_core::Error;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn analyzed(id: &str) -> DivisorData {
    analyze_divisor(
        &family(FamilyId::parse(id).unwrap()).unwrap(),
        DEFAULT_MAX_MONOMIALS,
    )
    .unwrap()
}

fn cert(id: &str, f: &LinearSection) -> FinitenessCertificate {
    rh_finiteness(f, &analyzed(id)).unwrap()
}

#[test]
fn diagonal_section_on_normal_crossing() {
    for n in 2..=6 {
        let c = cert(&format!("nc:{n}"), &section(&vec![1; n]));
        assert!(c.rh_finite && c.rd_finite);
        assert_eq!(c.lf_direction, Some(ints(&vec![1; n])));
        // h(s, ..., s) = s^n
        assert_eq!(c.c_h, Rational::one());
        assert_eq!(c.kappa, Rational::one() / int(n as i64).pow(n as i32));
    }
}

#[test]
fn coordinate_section_is_not_finite() {
    let d = analyzed("nc:3");
    let f = section(&[1, 0, 0]);
    assert!(!rd_finiteness(&f, &d.h_dual));
    assert!(!rh_finiteness(&f, &d).unwrap().rh_finite);
}

#[test]
fn x_plus_z_on_symmetric_2x2() {
    let c = cert("sym:2", &section(&[1, 0, 1]));
    assert!(c.rh_finite && c.rd_finite);
}

#[test]
fn star3_sections() {
    let d = analyzed("star:3");
    // Columns (1,1), (0,1), (0,1): two parallel columns put f on the dual divisor.
    let literal = section(&[1, 1, 0, 1, 0, 1]);
    assert!(!rd_finiteness(&literal, &d.h_dual));
    assert!(!rh_finiteness(&literal, &d).unwrap().rh_finite);
    assert!(rh_finiteness(&star3_f(), &d).unwrap().rh_finite);
}

#[test]
fn wrong_length_is_rejected() {
    let d = analyzed("nc:3");
    assert_eq!(
        rh_finiteness(&section(&[1, 1]), &d).unwrap_err(),
        Error::DimensionMismatch {
            expected: 3,
            found: 2
        }
    );
    assert!(LinearSection::new(ints(&[0, 0])).is_err());
}

#[test]
fn kappa_scaling_law() {
    // v is normalized independently of f, so c_h is unchanged and f(v) scales.
    for (id, f) in [
        ("nc:4", section(&[1, 2, 3, 4])),
        ("sym:2", section(&[1, 0, 1])),
        ("star:3", star3_f()),
    ] {
        let base = cert(id, &f);
        for s in [int(2), int(-3), Rational::new(5.into(), 7.into())] {
            let scaled = cert(id, &f.scaled(&s).unwrap());
            assert_eq!(scaled.c_h, base.c_h, "{id}");
            assert_eq!(scaled.kappa, &base.kappa / s.pow(base.n() as i32), "{id}");
        }
    }
}

#[test]
fn powers_below_n_are_tautological() {
    let c = cert("nc:4", &section(&[1, 1, 1, 1]));
    for ell in 0..4u32 {
        let g = c.f().pow(ell);
        let res = divide(&g, &c).unwrap();
        assert_eq!(res.c, Rational::one());
        assert_eq!(res.power_index, ell);
        assert_eq!(res.h_power, 0);
        assert!(res.quotients.iter().all(SparsePoly::is_zero));
    }
}

#[test]
fn h_divides_as_itself() {
    for (id, f) in [
        ("nc:3", section(&[1, 1, 1])),
        ("sym:2", section(&[1, 0, 1])),
        ("star:3", star3_f()),
    ] {
        let c = cert(id, &f);
        let res = divide(c.h(), &c).unwrap();
        assert_eq!(
            (res.c, res.power_index, res.h_power),
            (Rational::one(), 0, 1),
            "{id}"
        );
        assert!(res.quotients.iter().all(SparsePoly::is_zero));
    }
}

#[test]
fn square_of_f_on_normal_crossing_2() {
    // (x1 + x2)^2 = 4 x1 x2 + (x1 - x2)^2, and with ξ = diag(1/2, -1/2),
    // ξ(f) = (x1 - x2)/2, so the quotient is 2(x1 - x2).
    let c = cert("nc:2", &section(&[1, 1]));
    let g = poly("x1^2 + 2*x1*x2 + x2^2", 2);
    let res = divide(&g, &c).unwrap();
    assert_eq!(res.c, int(4));
    assert_eq!((res.power_index, res.h_power), (0, 1));
    assert_eq!(res.quotients, vec![poly("2*x1 - 2*x2", 2)]);
    assert_eq!(res.reconstruct(&c), g);
    assert_eq!(divide_oracle(&g, &c).unwrap(), res);
}

#[test]
fn zero_input() {
    let c = cert("nc:3", &section(&[1, 1, 1]));
    let res = divide_graded(&SparsePoly::zero(3), 5, &c).unwrap();
    assert!(res.c.is_zero());
    assert_eq!((res.power_index, res.h_power), (2, 1));
    assert!(res.quotients.iter().all(SparsePoly::is_zero));
}

#[test]
fn non_homogeneous_input_is_rejected() {
    let c = cert("nc:2", &section(&[1, 1]));
    assert_eq!(
        divide(&poly("x1^2 + x2", 2), &c).unwrap_err(),
        Error::NotHomogeneous
    );
}

#[test]
fn division_needs_a_finite_section() {
    let c = cert("nc:2", &section(&[1, 0]));
    assert!(divide(&poly("x1^2", 2), &c).is_err());
}

fn random_form(n: usize, deg: u32, terms: usize, seed: u64) -> SparsePoly {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
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

const CASES: [(&str, &[i64]); 8] = [
    ("nc:2", &[1, 1]),
    ("nc:3", &[1, 2, 3]),
    ("nc:4", &[1, 1, 1, 1]),
    ("nc:5", &[2, 1, 1, 3, 1]),
    ("nc:6", &[1, 1, 1, 1, 1, 1]),
    ("sym:2", &[1, 0, 1]),
    ("sym:3", &[1, 0, 0, 1, 0, 1]),
    ("star:3", &[1, 0, 1, 1, 0, 1]),
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(240))]

    #[test]
    fn divide_agrees_with_the_dense_oracle(case in 0..CASES.len(), deg in 0u32..=6, terms in 1usize..6, seed: u64) {
        let (id, f) = CASES[case];
        let c = cert(id, &section(f));
        let g = random_form(c.n(), deg, terms, seed);
        prop_assume!(!g.is_zero());
        let fast = divide(&g, &c).unwrap();
        let slow = divide_oracle(&g, &c).unwrap();
        prop_assert_eq!(&fast.c, &slow.c);
        prop_assert_eq!(fast.power_index, slow.power_index);
        prop_assert_eq!(fast.h_power, slow.h_power);
        prop_assert_eq!(fast.reconstruct(&c), g.clone());
        prop_assert_eq!(slow.reconstruct(&c), g);
    }
}
