//! Numerical verification of Jastrow factors for the Coulomb Hamiltonian
//! H = -Δ + V.

pub mod constructions;
pub mod error;
pub mod field;
pub mod geometry;
pub mod harmonics;
pub mod jastrow;
pub mod poisson;
pub mod schrodinger;
pub mod suite;
pub mod verification;

pub use error::{Error, Result};
pub use field::{FnField, ScalarField};

/// Default scalar.
pub type Real = f64;
/// Exact scalar used for harmonic spans and moments.
pub type Rational = num_rational::BigRational;
