mod common;

use common::{ints, star3_f};
use linfree_core::catalog::{
    canonical_f, dynkin_d_quiver, e6_quiver, family, logarithmic_algebra, normal_crossing,
    path_minors, quiver_lfd, random_finite_f, star_quiver, sym_matrices, FamilyId, QuiverSpec,
};
use linfree_core::divisor::{
    analyze_divisor, saito_check, saito_check_capped, DEFAULT_MAX_MONOMIALS,
};
use linfree_core::exactalg::{RationalMatrix, SparsePoly};
use linfree_core::pipeline::{analyze, Options, SectionChoice};
use linfree_core::Error;
use num_traits::Zero;

fn quiver(nodes: &[(&str, usize)], arrows: &[(usize, usize)]) -> QuiverSpec {
    QuiverSpec {
        nodes: nodes.iter().map(|(l, d)| (l.to_string(), *d)).collect(),
        arrows: arrows.to_vec(),
    }
}

#[test]
fn a2_quiver_is_a_point_divisor() {
    let p = quiver_lfd("A2", &quiver(&[("a", 1), ("b", 1)], &[(0, 1)])).unwrap();
    assert_eq!(p.n, 1);
    assert_eq!(saito_check(&p).unwrap().h, SparsePoly::var(1, 0));
}

#[test]
fn dimension_match_for_the_series() {
    for m in 4..=9 {
        let q = dynkin_d_quiver(m);
        assert_eq!(q.rep_dimension(), 4 * m - 10, "D{m}");
        assert_eq!(q.rep_dimension(), q.group_dimension(), "D{m}");
    }
    for m in 2..=6 {
        let q = star_quiver(m);
        assert_eq!(q.rep_dimension(), m * (m - 1), "star {m}");
        assert_eq!(q.rep_dimension(), q.group_dimension(), "star {m}");
    }
    let e6 = e6_quiver();
    assert_eq!((e6.rep_dimension(), e6.group_dimension()), (22, 22));
}

#[test]
fn branch_node_receives_every_arrow() {
    // D_m: all arrows point towards the trivalent node.
    for m in 4..=7 {
        let q = dynkin_d_quiver(m);
        let branch = m - 3;
        let mut reach = vec![false; q.nodes.len()];
        reach[branch] = true;
        for _ in 0..m {
            for &(t, h) in &q.arrows {
                if reach[h] {
                    reach[t] = true;
                }
            }
        }
        assert!(reach.iter().all(|&r| r), "D{m}");
        assert_eq!(q.arrows.iter().filter(|a| a.1 == branch).count(), 3, "D{m}");
    }
}

#[test]
fn family_dimensions() {
    for (id, n) in [
        ("nc:4", 4),
        ("star:3", 6),
        ("star:4", 12),
        ("dynkinD:5", 10),
        ("sym:2", 3),
        ("sym:4", 10),
        ("e6", 22),
    ] {
        let id = FamilyId::parse(id).unwrap();
        assert_eq!(id.dimension(), n, "{id}");
        assert_eq!(family(id).unwrap().n, n, "{id}");
    }
}

#[test]
fn family_ids_round_trip() {
    for s in ["nc:4", "star:3", "dynkinD:5", "e6", "sym:2"] {
        assert_eq!(FamilyId::parse(s).unwrap().to_string(), s);
    }
    for bad in ["nc", "foo:3", "nc:x", "dynkinD:3", "star:1", "nc:0"] {
        assert!(FamilyId::parse(bad).is_err(), "{bad}");
    }
}

#[test]
fn quiver_input_errors() {
    let cycle = quiver(&[("a", 1), ("b", 1)], &[(0, 1), (1, 0)]);
    assert!(matches!(
        quiver_lfd("cycle", &cycle),
        Err(Error::UnsupportedParameter(_))
    ));
    let wrong = quiver(&[("a", 1), ("b", 2)], &[(0, 1)]);
    assert!(matches!(
        quiver_lfd("wrong", &wrong),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn e6_is_constructed_but_capped() {
    let p = family(FamilyId::E6).unwrap();
    assert_eq!(p.n, 22);
    assert_eq!(p.lie_basis.len(), 22);
    assert!(matches!(
        saito_check_capped(&p, DEFAULT_MAX_MONOMIALS),
        Err(Error::ResourceCap { .. })
    ));
    assert_eq!(canonical_f(FamilyId::E6).unwrap().len(), 22);
}

#[test]
fn symmetric_matrices_are_never_special() {
    for k in 2..=4 {
        let d = analyze_divisor(&sym_matrices(k).unwrap(), DEFAULT_MAX_MONOMIALS).unwrap();
        assert!(!d.special, "k = {k}");
        assert_eq!(d.n, k * (k + 1) / 2);
    }
}

#[test]
fn canonical_sections() {
    assert_eq!(
        canonical_f(FamilyId::NormalCrossing(4))
            .unwrap()
            .coefficients(),
        &ints(&[1, 1, 1, 1])[..]
    );
    // a11 + a21 + a22 + a23 as printed
    assert_eq!(
        canonical_f(FamilyId::Star(3)).unwrap().coefficients(),
        &ints(&[1, 1, 0, 1, 0, 1])[..]
    );
    assert_eq!(
        canonical_f(FamilyId::SymMatrices(2))
            .unwrap()
            .coefficients(),
        &ints(&[1, 0, 1])[..]
    );
    assert!(canonical_f(FamilyId::DynkinD(5)).is_none());
}

#[test]
fn random_sections_on_normal_crossing_avoid_coordinate_planes() {
    let p = normal_crossing(3).unwrap();
    for seed in 0..20 {
        let r = random_finite_f(&p, seed).unwrap();
        assert!(
            r.section.coefficients().iter().all(|c| !c.is_zero()),
            "seed {seed}"
        );
        assert_eq!(random_finite_f(&p, seed).unwrap().section, r.section);
    }
}

#[test]
fn path_minors_has_no_finite_section() {
    let p = path_minors().unwrap();
    assert_eq!(
        random_finite_f(&p, 0).unwrap_err(),
        Error::ExhaustedAttempts { attempts: 10_000 }
    );
}

#[test]
fn logarithmic_algebra_of_normal_crossing_is_diagonal() {
    let h = saito_check(&normal_crossing(3).unwrap()).unwrap().h;
    let alg = logarithmic_algebra(&h).unwrap();
    assert_eq!(alg.len(), 3);
    assert!(alg.iter().all(RationalMatrix::is_diagonal));
}

#[test]
fn random_sections_give_the_star3_spectrum() {
    let p = family(FamilyId::Star(3)).unwrap();
    let opts = Options::default();
    let reference = analyze(&p, &SectionChoice::Given(star3_f()), &opts)
        .unwrap()
        .spectrum
        .spectrum_generic;
    for seed in 0..3 {
        let a = analyze(&p, &SectionChoice::Random(seed), &opts).unwrap();
        assert_eq!(a.spectrum.spectrum_generic, reference, "seed {seed}");
    }
    let d4 = family(FamilyId::DynkinD(4)).unwrap();
    let a = analyze(&d4, &SectionChoice::Random(0), &opts).unwrap();
    assert_eq!(a.spectrum.spectrum_generic, reference);
}
