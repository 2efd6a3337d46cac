//! Homogeneous Poisson solves on R^n and Newton potentials on balls.

pub mod newton;
pub mod solve;

pub use newton::{Estimate, NewtonOptions, NewtonPotential};
pub use solve::{resonance_coefficient, solve_homogeneous, DegreeTerm, HomogeneousSolution, ResonanceGate, Source};
