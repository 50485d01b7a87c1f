#![allow(dead_code)]

use linfree_core::exactalg::{int, rat, Rational, SparsePoly};
use linfree_core::sections::LinearSection;

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn q(n: i64, d: i64) -> Rational {
    rat(n, d)
}

pub fn poly(s: &str, n: usize) -> SparsePoly {
    SparsePoly::parse(s, n).unwrap()
}

pub fn section(v: &[i64]) -> LinearSection {
    LinearSection::new(ints(v)).unwrap()
}

/// `a11 + a12 + a22 + a23` on the three-arm star: a finite section.
pub fn star3_f() -> LinearSection {
    section(&[1, 0, 1, 1, 0, 1])
}

/// `a = c · b` for some non-zero rational `c`.
pub fn proportional(a: &SparsePoly, b: &SparsePoly) -> Option<Rational> {
    let (m, c) = b.leading_term()?;
    let ratio = a.coefficient(m) / c;
    (!num_traits::Zero::is_zero(&ratio) && *a == b.scale(&ratio)).then_some(ratio)
}

pub fn sorted(v: &[Rational]) -> Vec<Rational> {
    let mut s = v.to_vec();
    s.sort();
    s
}
