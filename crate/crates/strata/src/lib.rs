//! Exact weight spectra, characters, alpha-invariants and slopes for strata of
//! holomorphic differentials, together with the invariants of the
//! quasi-homogeneous curve singularities attached to them.
//!
//! The linear algebra is generic over any [`Field`]; the aliases below fix
//! the arbitrary-precision types used everywhere else.

pub mod branch_algebra;
pub mod catalog;
pub mod classifier;
pub mod curve_models;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod scalar;
pub mod semigroup;
pub mod signature;

pub use error::{Error, Result};
pub use scalar::Field;

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
/// Branch algebra over the rationals.
pub type Algebra = branch_algebra::BranchAlgebra<Rational>;
