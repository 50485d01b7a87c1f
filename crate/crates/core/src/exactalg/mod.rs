//! Exact arithmetic over `Q`: sparse multivariate polynomials in grevlex
//! order, dense rational matrices, polynomial matrices and univariate
//! polynomials.

mod matrix;
mod monomial;
mod poly;
mod polymatrix;
mod text;
mod univariate;

pub use matrix::{solve_sparse, RationalMatrix};
pub use monomial::Monomial;
pub use poly::{apply_derivation, poly_arith, squarefree_test, PolyOp, SparsePoly};
pub use polymatrix::PolyMatrix;
pub use text::{format_rational, parse_rational};
pub use univariate::UniPoly;

use num_bigint::BigInt;

/// Reduced fraction with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Number of monomials of degree `d` in `n` variables, saturating.
pub fn graded_dimension(n: usize, d: usize) -> u128 {
    if n == 0 {
        return u128::from(d == 0);
    }
    // C(n + d - 1, d)
    let mut acc: u128 = 1;
    for i in 0..d as u128 {
        acc = acc.saturating_mul(n as u128 + i) / (i + 1);
    }
    acc
}
