//! Exact computation of the Brieskorn lattice spectrum of a linear section
//! on a linear free divisor.
//!
//! The pipeline runs from a Lie-algebra presentation of the divisor to the
//! spectrum at `t = 0` and at generic `t`:
//!
//! 1. [`divisor`] validates the presentation and derives `h`, the character
//!    weights, the log-`h` fields and the dual equation.
//! 2. [`sections`] checks finiteness of `f` and divides in the Jacobian
//!    algebra.
//! 3. [`gaussmanin`] computes the connection coefficients `c_0, ..., c_n`.
//! 4. [`birkhoff`] solves the Birkhoff problem for that connection.
//! 5. [`spectrum`] runs the exchange algorithms and derives monodromy,
//!    residues and the structural reports.
//!
//! [`catalog`] builds the standard families. Everything is exact over `Q`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod birkhoff;
pub mod catalog;
pub mod divisor;
mod error;
pub mod exactalg;
pub mod gaussmanin;
pub mod pipeline;
pub mod sections;
pub mod spectrum;

pub use error::{Error, ErrorClass};
pub use exactalg::{Monomial, PolyMatrix, Rational, RationalMatrix, SparsePoly, UniPoly};

pub type Result<T> = core::result::Result<T, Error>;
