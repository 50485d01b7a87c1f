use linfree_core::exactalg::{
    apply_derivation, int, poly_arith, rat, solve_sparse, squarefree_test, PolyMatrix, PolyOp,
    Rational, RationalMatrix, SparsePoly, UniPoly,
};
use proptest::prelude::*;

fn p(s: &str, n: usize) -> SparsePoly {
    SparsePoly::parse(s, n).unwrap()
}

fn diag(d: &[i64]) -> RationalMatrix {
    RationalMatrix::diagonal(&d.iter().map(|&x| int(x)).collect::<Vec<_>>())
}

/// Leibniz expansion over all permutations; independent of both library routes.
fn leibniz_det(m: &PolyMatrix) -> SparsePoly {
    let n = m.size();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = SparsePoly::zero(m.nvars());
    fn sign(p: &[usize]) -> bool {
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 1
    }
    fn next_perm(p: &mut [usize]) -> bool {
        let n = p.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }
    loop {
        let mut t = SparsePoly::one(m.nvars());
        for (i, &j) in perm.iter().enumerate() {
            t = &t * &m[(i, j)];
        }
        acc = if sign(&perm) { &acc - &t } else { &acc + &t };
        if !next_perm(&mut perm) {
            break;
        }
    }
    acc
}

#[test]
fn difference_of_squares() {
    let a = p("x1 + x2", 2);
    let b = p("x1 - x2", 2);
    assert_eq!(
        poly_arith(&a, &b, PolyOp::Mul).unwrap(),
        p("x1^2 - x2^2", 2)
    );
    assert_eq!(&a + &SparsePoly::zero(2), a);
    assert_eq!(a.pow(2).to_string(), "x1^2 + 2*x1*x2 + x2^2");
}

#[test]
fn arith_rejects_mismatched_rings() {
    let err = poly_arith(&SparsePoly::one(2), &SparsePoly::one(3), PolyOp::Add).unwrap_err();
    assert_eq!(err.code(), "DimensionMismatch");
}

#[test]
fn derivation_examples() {
    let h = p("x1*x2", 2);
    assert_eq!(
        apply_derivation(&diag(&[1, -1]), &h).unwrap(),
        SparsePoly::zero(2)
    );
    assert_eq!(apply_derivation(&diag(&[1, 0]), &h).unwrap(), h);
    let q = p("3*x1^3 - x1*x2^2 + 1/2*x2^3", 2);
    assert_eq!(
        apply_derivation(&RationalMatrix::identity(2), &q).unwrap(),
        q.scale(&int(3))
    );
}

#[test]
fn derivation_matches_definition() {
    // ξ_A(p) = Σ_j (A x)_j ∂_j p, assembled by hand for an off-diagonal A.
    let a = RationalMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(2), int(0)]]);
    let q = p("x1^2*x2", 2);
    // (A x) = (x2, 2 x1); ∂1 q = 2 x1 x2, ∂2 q = x1^2.
    assert_eq!(
        apply_derivation(&a, &q).unwrap(),
        p("2*x1^3 + 2*x1*x2^2", 2)
    );
}

#[test]
fn determinant_examples() {
    let n = 4;
    let m = PolyMatrix::from_fn(n, n, |i, j| {
        if i == j {
            SparsePoly::var(n, i)
        } else {
            SparsePoly::zero(n)
        }
    });
    let prod = p("x1*x2*x3*x4", 4);
    assert_eq!(m.det_bareiss(), prod);
    assert_eq!(m.det_cofactor(), prod);
    let id = PolyMatrix::from_rational(&RationalMatrix::identity(3), 2);
    assert_eq!(id.det(), SparsePoly::one(2));
}

#[test]
fn kernel_examples() {
    assert!(RationalMatrix::identity(3).kernel_basis().is_empty());
    let k = RationalMatrix::zeros(2, 2).kernel_basis();
    assert_eq!(k, vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
    // ξ_j(f) for normal crossing with f = Σ x_i: rows e_j - e_n after normalisation.
    let rows: Vec<Vec<Rational>> = (0..3)
        .map(|j| {
            (0..4)
                .map(|i| if i == j { rat(3, 4) } else { rat(-1, 4) })
                .collect()
        })
        .collect();
    assert_eq!(
        RationalMatrix::from_rows(rows).kernel_basis(),
        vec![vec![int(1); 4]]
    );
}

#[test]
fn linear_change_examples() {
    let q = p("x1*x2", 2);
    assert_eq!(q.linear_change(&RationalMatrix::identity(2)).unwrap(), q);
    let swap = RationalMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
    assert_eq!(q.linear_change(&swap).unwrap(), q);
    // x1 = (y1 + s)/2, x2 = (s - y1)/2 turns x1 - x2 into y1.
    let l = RationalMatrix::from_rows(vec![
        vec![rat(1, 2), rat(1, 2)],
        vec![rat(-1, 2), rat(1, 2)],
    ]);
    let d = p("x1 - x2", 2);
    assert_eq!(d.linear_change(&l).unwrap(), p("x1", 2));
    let back = d
        .linear_change(&l)
        .unwrap()
        .linear_change(&l.inverse().unwrap())
        .unwrap();
    assert_eq!(back, d);
    let sing = RationalMatrix::from_rows(vec![vec![int(1), int(1)], vec![int(1), int(1)]]);
    assert_eq!(d.linear_change(&sing).unwrap_err().code(), "SingularMatrix");
}

#[test]
fn squarefree_examples() {
    assert!(squarefree_test(&p("x1*x2", 2)).unwrap());
    assert!(!squarefree_test(&p("x1^2", 2)).unwrap());
    assert!(squarefree_test(&p("x1^2*x3 - x1*x2^2", 3)).unwrap());
    assert!(!squarefree_test(&p("x1^3*x3 - x1^2*x2^2", 3)).unwrap());
    assert!(squarefree_test(&SparsePoly::zero(2)).is_err());
}

#[test]
fn rational_root_examples() {
    let x2m1 = UniPoly::from_coeffs(vec![int(-1), int(0), int(1)]);
    assert_eq!(x2m1.rational_roots(), vec![int(-1), int(1)]);
    let x2p1 = UniPoly::from_coeffs(vec![int(1), int(0), int(1)]);
    assert!(x2p1.rational_roots().is_empty());
    let sq = UniPoly::from_coeffs(vec![int(1), int(-4), int(4)]);
    assert_eq!(sq.rational_roots(), vec![rat(1, 2), rat(1, 2)]);
    let cubic = UniPoly::from_coeffs(vec![int(0), int(-2), int(0), int(1)]);
    assert_eq!(cubic.rational_roots(), vec![int(0)]);
}

#[test]
fn text_form_examples() {
    let q = p("-3/2*x1^2*x3 + x2 - 7", 3);
    assert_eq!(q.to_string(), "-3/2*x1^2*x3 + x2 - 7");
    assert_eq!(SparsePoly::zero(3).to_string(), "0");
    assert!(SparsePoly::parse("x4", 3).is_err());
    assert!(SparsePoly::parse("1/0*x1", 3).is_err());
    assert!(SparsePoly::parse("x1 +", 3).is_err());
    // Non-canonical input is accepted and normalised.
    assert_eq!(
        p("x2*x1 + x1*x2 + 2 * x1 ^2", 2).to_string(),
        "2*x1^2 + 2*x1*x2"
    );
}

#[test]
fn char_poly_and_semisimplicity() {
    let j = RationalMatrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]);
    assert_eq!(
        j.char_poly(),
        UniPoly::from_coeffs(vec![int(1), int(-2), int(1)])
    );
    assert!(!j.is_semisimple());
    assert!(diag(&[1, 1, 2]).is_semisimple());
    let rot = RationalMatrix::from_rows(vec![vec![int(0), int(-1)], vec![int(1), int(0)]]);
    assert!(rot.is_semisimple());
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(a, b)| rat(a, b))
}

fn arb_poly(n: usize, max_deg: u16, max_terms: usize) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, n), small_rat()),
        0..max_terms,
    )
    .prop_map(move |terms| {
        let t = terms
            .into_iter()
            .map(|(e, c)| (linfree_core::Monomial::from_exponents(e), c))
            .collect();
        SparsePoly::from_unsorted(n, t)
    })
}

fn arb_linear_matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), n * n).prop_map(move |cs| {
        PolyMatrix::from_fn(n, n, |i, j| {
            SparsePoly::linear(&cs[i * n + j].iter().map(|&c| int(c)).collect::<Vec<_>>())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn determinant_routes_agree(m in (2usize..=5).prop_flat_map(arb_linear_matrix)) {
        let oracle = leibniz_det(&m);
        prop_assert_eq!(m.det_bareiss(), oracle.clone());
        prop_assert_eq!(m.det_cofactor(), oracle);
    }

    #[test]
    fn leibniz_rule(a in arb_poly(3, 3, 6), b in arb_poly(3, 3, 6),
                    entries in prop::collection::vec(-3i64..=3, 9)) {
        let m = RationalMatrix::from_fn(3, 3, |i, j| int(entries[i * 3 + j]));
        let lhs = apply_derivation(&m, &(&a * &b)).unwrap();
        let rhs = &(&apply_derivation(&m, &a).unwrap() * &b) + &(&a * &apply_derivation(&m, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn linear_change_round_trip(q in arb_poly(3, 3, 6), entries in prop::collection::vec(-3i64..=3, 9)) {
        let l = RationalMatrix::from_fn(3, 3, |i, j| int(entries[i * 3 + j]) + if i == j { int(7) } else { int(0) });
        prop_assume!(l.inverse().is_some());
        let there = q.linear_change(&l).unwrap();
        prop_assert_eq!(there.linear_change(&l.inverse().unwrap()).unwrap(), q);
    }

    #[test]
    fn canonical_form_is_stable(a in arb_poly(3, 4, 8), b in arb_poly(3, 4, 8)) {
        for r in [&a + &b, &a - &b, &a * &b, a.derivative(1), apply_derivation(&RationalMatrix::identity(3), &a).unwrap()] {
            prop_assert_eq!(r.recanonicalize(), r);
        }
    }

    #[test]
    fn text_round_trip(a in arb_poly(4, 3, 8)) {
        let s = a.to_string();
        let back = SparsePoly::parse(&s, 4).unwrap();
        prop_assert_eq!(back.to_string(), s);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in arb_poly(3, 2, 5), b in arb_poly(3, 2, 5)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn roots_recovered_from_factors(roots in prop::collection::vec(small_rat(), 0..5),
                                    irreducible in 1i64..6) {
        // Π (x - r) · (x² + k) has exactly the given rational roots.
        let mut poly = UniPoly::from_coeffs(vec![int(irreducible), int(0), int(1)]);
        for r in &roots {
            poly = &poly * &UniPoly::from_coeffs(vec![-r.clone(), int(1)]);
        }
        let mut expected = roots.clone();
        expected.sort();
        prop_assert_eq!(poly.scale(&rat(3, 7)).rational_roots(), expected);
    }

    #[test]
    fn squarefree_detects_squares(a in arb_poly(3, 2, 4)) {
        prop_assume!(a.total_degree().unwrap_or(0) >= 1);
        let sq = &a * &a;
        prop_assert!(!squarefree_test(&sq).unwrap());
    }

    #[test]
    fn sparse_solver_matches_dense(rows in 1usize..7, cols in 1usize..7,
                                   entries in prop::collection::vec((-3i64..=3, 0u8..3), 49),
                                   x in prop::collection::vec(-4i64..=4, 7)) {
        // Sparse-ish entries; a right-hand side in the image, then a perturbed one.
        let dense = RationalMatrix::from_fn(rows, cols, |i, j| {
            let (v, keep) = entries[i * 7 + j];
            if keep == 0 { int(v) } else { int(0) }
        });
        let sparse: Vec<Vec<(usize, Rational)>> =
            (0..rows).map(|i| (0..cols).map(|j| (j, dense[(i, j)].clone())).collect()).collect();
        let x: Vec<Rational> = x[..cols].iter().map(|&v| int(v)).collect();
        let b = dense.mul_vec(&x);
        let sol = solve_sparse(cols, &sparse, &b).expect("consistent");
        prop_assert_eq!(dense.mul_vec(&sol), b.clone());
        let mut b2 = b;
        b2[0] += int(1);
        prop_assert_eq!(solve_sparse(cols, &sparse, &b2).is_some(), dense.solve(&b2).is_some());
    }
}
