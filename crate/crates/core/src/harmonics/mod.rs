//! Polynomials, harmonic bases, projections and basis checks.

pub mod basis;
pub mod checks;
pub mod linalg;
pub mod poly;
pub mod projection;

pub use basis::{degree_dimension, gram_matrix, harmonic_spanning_set, kernel_dimension, HarmonicBasis, Symmetry};
pub use checks::{extend_orthogonality_check, laplace_beltrami_check, ExtensionReport};
pub use poly::{monomials, parse_polynomial, CompiledPolynomial, Monomial, Polynomial};
pub use projection::{project_invariant, project_monte_carlo, project_polynomial, Projection, Projector};
