//! Checks that consume the rest of the crate and emit [`CheckReport`]s.
pub mod cusp;
pub mod identities;
pub mod newton;
pub mod probes;
pub mod report;
pub mod structural;

pub use report::{linear_fit, CheckKind, CheckReport, Expected, Quantity, RadiusSweep};
