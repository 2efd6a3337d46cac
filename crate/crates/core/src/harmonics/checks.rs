//! Numerical checks on harmonic bases.
use super::basis::HarmonicBasis;
use super::projection::{project_monte_carlo, Projection};
use crate::error::Result;
use crate::field::FnField;
use crate::geometry::fd::{fd_laplacian, FdScheme};
use crate::geometry::sampling::SphereSampler;
use serde::{Deserialize, Serialize};

/// Largest deviation from -ΔY = l(l+n-2) Y, checked by finite differences on
/// the 0-homogeneous extension p(x)/|x|^l at sampled points of the sphere.
///
/// The deviation is scaled by max(1, l(l+n-2)) times the largest |Y| seen.
pub fn laplace_beltrami_check(basis: &HarmonicBasis, samples: usize, seed: u64) -> Result<f64> {
    let (n, l) = (basis.n, basis.degree as i32);
    let lambda = (l * (l + n as i32 - 2)) as f64;
    let points = SphereSampler::new(n, seed).points(samples);
    let scheme = FdScheme::default();
    let mut worst: f64 = 0.0;
    for y in basis.elements() {
        let c = y.compile();
        let ext = FnField::new(n, |x: &[f64]| {
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            c.eval(x) / r.powi(l)
        })
        .with_singular(|x: &[f64]| x.iter().map(|v| v * v).sum::<f64>().sqrt());
        let mut ymax: f64 = 0.0;
        let mut dev: f64 = 0.0;
        for p in &points {
            let v = c.eval(p);
            ymax = ymax.max(v.abs());
            dev = dev.max((fd_laplacian(&ext, p, &scheme)? + lambda * v).abs());
        }
        worst = worst.max(dev / (lambda.max(1.0) * ymax.max(f64::MIN_POSITIVE)));
    }
    Ok(worst)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub projection: Projection,
    /// max |coefficient| / standard error
    pub max_z: f64,
}

/// Projects φ̃(ω) = φ(ω'/|ω'|), ω' the first k coordinates of ω ∈ S^{n-1},
/// onto the degree-`target` harmonics of S^{n-1} by sampling.
pub fn extend_orthogonality_check<F>(phi: F, k: usize, n: usize, target: u32, samples: usize, seed: u64) -> Result<ExtensionReport>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let basis = HarmonicBasis::full(n, target)?;
    let projection = project_monte_carlo(
        |w| {
            let r = w[..k].iter().map(|v| v * v).sum::<f64>().sqrt();
            let u: Vec<f64> = w[..k].iter().map(|v| v / r).collect();
            phi(&u)
        },
        &basis,
        samples,
        seed,
    );
    let max_z = projection.max_z();
    Ok(ExtensionReport { projection, max_z })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_in_three_dimensions() {
        for l in 0..4 {
            let b = HarmonicBasis::full(3, l).unwrap();
            assert!(laplace_beltrami_check(&b, 8, 1).unwrap() < 1e-6);
        }
    }
}
