mod common;

use common::{ints, poly, q, section, star3_f};
use linfree_core::catalog::{family, FamilyId};
use linfree_core::divisor::{analyze_divisor, DivisorData, DEFAULT_MAX_MONOMIALS};
use linfree_core::exactalg::{int, Rational, RationalMatrix, SparsePoly};
use linfree_core::gaussmanin::{
    check_degree_cap, connection_matrix, connection_matrix_with, flatness_check, normalize_c0,
    shift_matrix, t_connection_matrix, trick_reduce, ConnectionCoefficients, GMElement,
};
use linfree_core::sections::{divide_oracle, rh_finiteness, FinitenessCertificate, LinearSection};
use linfree_core::Error;
use num_traits::{One, Zero};

fn setup(id: &str, f: &LinearSection) -> (DivisorData, FinitenessCertificate) {
    let d = analyze_divisor(
        &family(FamilyId::parse(id).unwrap()).unwrap(),
        DEFAULT_MAX_MONOMIALS,
    )
    .unwrap();
    let c = rh_finiteness(f, &d).unwrap();
    (d, c)
}

fn diagonal_section(n: usize) -> LinearSection {
    section(&vec![1; n])
}

#[test]
fn normal_crossing_2_coefficients() {
    let (d, c) = setup("nc:2", &diagonal_section(2));
    assert_eq!(connection_matrix(&d, &c).unwrap().c, ints(&[4, -1, 0]));
}

#[test]
fn normal_crossing_shape() {
    for n in 2..=7 {
        let (d, c) = setup(&format!("nc:{n}"), &diagonal_section(n));
        let cc = connection_matrix(&d, &c).unwrap();
        let n64 = n as i64;
        // (-f)^n on the line L_f = (1, ..., 1) is (-n)^n s^n and h is s^n.
        assert_eq!(cc.c[0], int(-n64).pow(n as i32), "n = {n}");
        assert_eq!(cc.c[1], int(-n64 * (n64 - 1) / 2), "n = {n}");
        assert!(cc.c[n].is_zero(), "special implies c_n = 0");
    }
}

#[test]
fn special_divisors_have_vanishing_last_coefficient() {
    let (d, c) = setup("star:3", &star3_f());
    assert!(d.special);
    let cc = connection_matrix(&d, &c).unwrap();
    assert!(cc.c[6].is_zero());
    assert_eq!(cc.c[1], int(-15));
}

#[test]
fn oracle_division_gives_the_same_connection() {
    let cases = [
        ("nc:2", diagonal_section(2)),
        ("nc:3", section(&[1, 2, 3])),
        ("nc:4", diagonal_section(4)),
        ("sym:2", section(&[1, 0, 1])),
        ("sym:3", section(&[1, 0, 0, 1, 0, 1])),
        ("star:3", star3_f()),
    ];
    for (id, f) in cases {
        let (d, c) = setup(id, &f);
        let fast = connection_matrix(&d, &c).unwrap();
        let (slow, steps) = connection_matrix_with(&d, &c, divide_oracle).unwrap();
        assert_eq!(fast, slow, "{id}");
        assert_eq!(steps.len(), d.n + 1);
        for (r, s) in steps.iter().enumerate() {
            assert_eq!(s.degree as usize, d.n - r);
        }
    }
}

#[test]
fn trick_reduce_examples() {
    let xi = RationalMatrix::diagonal(&ints(&[1, -1]));
    assert!(
        trick_reduce(&[SparsePoly::zero(2)], std::slice::from_ref(&xi), 2)
            .unwrap()
            .is_zero()
    );
    assert_eq!(
        trick_reduce(&[poly("x1 - x2", 2)], std::slice::from_ref(&xi), 2).unwrap(),
        poly("x1 + x2", 2)
    );
    let a = RationalMatrix::diagonal(&ints(&[2, 1, 0]));
    let b = RationalMatrix::unit(3, 0, 1);
    let ones = vec![SparsePoly::one(3), SparsePoly::one(3)];
    assert_eq!(
        trick_reduce(&ones, &[a, b], 3).unwrap(),
        SparsePoly::constant(3, int(3))
    );
    assert!(matches!(
        trick_reduce(&[SparsePoly::one(2)], &[], 2),
        Err(Error::DimensionMismatch {
            expected: 0,
            found: 1
        })
    ));
    assert!(trick_reduce(&[], &[], 1).unwrap().is_zero());
    assert_eq!(trick_reduce(&[], &[], 1).unwrap().nvars(), 1);
}

#[test]
fn normalization() {
    let unit = ConnectionCoefficients {
        c: ints(&[1, -1, 0]),
        normalized: false,
        t_scale: Rational::one(),
    };
    let n1 = normalize_c0(&unit).unwrap();
    assert_eq!(
        (n1.c.clone(), n1.t_scale.clone()),
        (unit.c.clone(), Rational::one())
    );
    let (d, c) = setup("nc:2", &diagonal_section(2));
    let n2 = normalize_c0(&connection_matrix(&d, &c).unwrap()).unwrap();
    assert_eq!(n2.c, ints(&[1, -1, 0]));
    assert_eq!(n2.t_scale, int(4));
    assert!(n2.normalized);
    let zero = ConnectionCoefficients {
        c: ints(&[0, 1]),
        normalized: false,
        t_scale: Rational::one(),
    };
    assert_eq!(normalize_c0(&zero).unwrap_err(), Error::InvalidConnection);
}

#[test]
fn connection_matrices_have_the_documented_shape() {
    let cc = ConnectionCoefficients {
        c: ints(&[5, 1, 2, 3]),
        normalized: false,
        t_scale: Rational::one(),
    };
    assert_eq!(cc.omega(2), {
        let mut m = RationalMatrix::zeros(3, 3);
        m[(1, 2)] = int(2);
        m
    });
    let mut om0 = shift_matrix(3);
    om0[(0, 2)] = int(10);
    assert_eq!(cc.omega0_at(&int(2)), om0);
    assert!(cc.omega(0).is_zero() && cc.omega(4).is_zero());
}

#[test]
fn basis_elements_express_as_unit_vectors() {
    let (d, c) = setup("sym:2", &section(&[1, 0, 1]));
    let minus_f = -c.f();
    for i in 0..3u32 {
        let e = GMElement::from_poly(minus_f.pow(i));
        assert_eq!(e.graded_degree(), Some(i as i64));
        let coords = e.express(&d, &c).unwrap();
        for (j, series) in coords.iter().enumerate() {
            if j == i as usize {
                assert_eq!(series.len(), 1);
                assert_eq!(series[&(0, 0)], Rational::one());
            } else {
                assert!(series.is_empty());
            }
        }
    }
    // h α = t α
    let coords = GMElement::from_poly(c.h().clone()).express(&d, &c).unwrap();
    assert_eq!(coords[0].get(&(1, 0)), Some(&Rational::one()));
}

#[test]
fn last_column_matches_the_expansion_of_f_to_the_n() {
    // (-f)^n α = c_0 t ω_1 + Σ_k c_k τ^(-k) ω_(n+1-k) once τ is accounted for.
    let (d, c) = setup("sym:2", &section(&[1, 0, 1]));
    let cc = connection_matrix(&d, &c).unwrap();
    let coords = GMElement::from_poly((-c.f()).pow(3))
        .express(&d, &c)
        .unwrap();
    assert_eq!(coords[0].get(&(1, 0)), Some(&cc.c[0]));
    for k in 1..=3 {
        let got = coords[3 - k]
            .get(&(0, k as u32))
            .cloned()
            .unwrap_or_else(Rational::zero);
        assert_eq!(got, cc.c[k], "k = {k}");
    }
}

#[test]
fn t_connection_examples() {
    let star = t_connection_matrix(&ints(&[2, 1, 2, 3, 4, 3]), 0, &int(1), true);
    assert_eq!(star.diagonal, ints(&[-2, 0, 0, 0, 0, 2]));
    assert!(star.flatness_holds && !star.non_reductive_warning);
    let nc = t_connection_matrix(&ints(&[0, 1, 2, 3]), 0, &int(1), true);
    assert!(nc.diagonal.iter().all(Zero::is_zero));
    let sym = t_connection_matrix(&[q(3, 4), int(1), q(5, 4)], 0, &int(1), false);
    assert!(sym.non_reductive_warning);
    assert_eq!(sym.diagonal, vec![q(-3, 4), int(0), q(3, 4)]);
}

#[test]
fn flatness_for_any_diagonal() {
    for (nu, k) in [
        (ints(&[0, 1, 2]), 0),
        (ints(&[2, 1, 2, 3, 4, 3]), 0),
        (vec![q(1, 3), q(4, 3), int(2)], 1),
    ] {
        assert!(flatness_check(&nu, k, &int(7)));
    }
}

#[test]
fn degree_cap() {
    assert!(check_degree_cap(10, DEFAULT_MAX_MONOMIALS).is_ok());
    assert!(check_degree_cap(12, DEFAULT_MAX_MONOMIALS).is_ok());
    assert!(matches!(
        check_degree_cap(14, DEFAULT_MAX_MONOMIALS),
        Err(Error::ResourceCap { .. })
    ));
}
