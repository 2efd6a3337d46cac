//! Configurations, cutoff, sphere measures, sampling, finite differences
//! and quadrature.

pub mod config;
pub mod cutoff;
pub mod fd;
pub mod points;
pub mod quadrature;
pub mod sampling;
pub mod sphere;
pub mod vec3;

pub use config::{electron, Configuration, Nucleus};
pub use cutoff::{chi, chi_value, smooth_step};
pub use fd::{fd_gradient, fd_hessian, fd_laplacian, fd_partial, fd_second, FdScheme};
pub use points::{ball_points, halton, unit_ball_points};
pub use quadrature::{composite, gauss_legendre, hylleraas_integrate, QuadratureResult};
pub use sampling::{monte_carlo, sample_sphere, sphere_monte_carlo, stream_rng, McEstimate, SphereSampler};
pub use sphere::{gamma_half, normalized_moment, normalized_moment_exact, sphere_area, sphere_monomial_moment};
