//! Coulomb potential, Hamiltonian residuals and hydrogenic eigenfunctions.
//! The Hamiltonian is H = -Δ + V without a factor 1/2.
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::geometry::fd::{fd_laplacian, FdScheme};
use crate::geometry::vec3;
use crate::geometry::Configuration;
use num_traits::Float;
use serde::{Deserialize, Serialize};

/// V = -Σ Z_k/|x_j - X_k| + Σ_{i<j} 1/|x_i - x_j|.
pub fn coulomb_potential<T: Float>(cfg: &Configuration<T>) -> Result<T> {
    Ok(coulomb_terms(cfg)?.0)
}

/// V together with Σ of the absolute values of its terms.
pub fn coulomb_terms<T: Float>(cfg: &Configuration<T>) -> Result<(T, T)> {
    cfg.check_nonsingular()?;
    let mut v = T::zero();
    let mut scale = T::zero();
    for (i, x) in cfg.electrons.iter().enumerate() {
        for n in &cfg.nuclei {
            let t = n.charge / vec3::dist(x, &n.position);
            v = v - t;
            scale = scale + t;
        }
        for y in &cfg.electrons[i + 1..] {
            let t = T::one() / vec3::dist(x, y);
            v = v + t;
            scale = scale + t;
        }
    }
    Ok((v, scale))
}

/// |(-Δ + V - E)ψ| / max(1, |ψ|) at the electron positions of `cfg`, with the
/// Laplacian taken by finite differences.
pub fn hamiltonian_residual(psi: &dyn ScalarField, energy: f64, cfg: &Configuration, scheme: &FdScheme) -> Result<f64> {
    if psi.dim() != cfg.dim() {
        return Err(Error::InvalidInput("wave function dimension differs from 3N".into()));
    }
    let x = cfg.flatten();
    let v = coulomb_potential(cfg)?;
    let p = psi.value(&x);
    let lap = fd_laplacian(psi, &x, scheme)?;
    Ok((-lap + (v - energy) * p).abs() / p.abs().max(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HydrogenicKind {
    /// e^{-Z|x|/2}
    Ground,
    /// x1 e^{-Z|x|/4}
    Excited,
}

/// One-electron eigenfunction of -Δ - Z/|x| with closed form derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hydrogenic {
    pub kind: HydrogenicKind,
    pub z: f64,
}

pub fn hydrogenic_state(z: f64, kind: HydrogenicKind) -> (Hydrogenic, f64) {
    let s = Hydrogenic { kind, z };
    (s, s.energy())
}

impl Hydrogenic {
    pub fn energy(&self) -> f64 {
        match self.kind {
            HydrogenicKind::Ground => -self.z * self.z / 4.0,
            HydrogenicKind::Excited => -self.z * self.z / 16.0,
        }
    }

    fn rate(&self) -> f64 {
        match self.kind {
            HydrogenicKind::Ground => self.z / 2.0,
            HydrogenicKind::Excited => self.z / 4.0,
        }
    }

    /// Value at the nucleus.
    pub fn at_origin(&self) -> f64 {
        match self.kind {
            HydrogenicKind::Ground => 1.0,
            HydrogenicKind::Excited => 0.0,
        }
    }
}

fn radius(x: &[f64]) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

impl ScalarField for Hydrogenic {
    fn dim(&self) -> usize {
        3
    }

    fn value(&self, x: &[f64]) -> f64 {
        let e = (-self.rate() * radius(x)).exp();
        match self.kind {
            HydrogenicKind::Ground => e,
            HydrogenicKind::Excited => x[0] * e,
        }
    }

    fn singular_distance(&self, x: &[f64]) -> f64 {
        radius(x)
    }

    fn gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        let r = radius(x);
        let a = self.rate();
        let e = (-a * r).exp();
        let de: Vec<f64> = x[..3].iter().map(|xi| -a * xi / r * e).collect();
        Some(match self.kind {
            HydrogenicKind::Ground => de,
            HydrogenicKind::Excited => (0..3).map(|i| if i == 0 { e } else { 0.0 } + x[0] * de[i]).collect(),
        })
    }

    fn laplacian(&self, x: &[f64]) -> Option<f64> {
        let r = radius(x);
        let a = self.rate();
        let p = self.value(x);
        Some(match self.kind {
            HydrogenicKind::Ground => p * (a * a - 2.0 * a / r),
            HydrogenicKind::Excited => p * (a * a - 4.0 * a / r),
        })
    }

    fn hessian(&self, x: &[f64]) -> Option<Vec<f64>> {
        let r = radius(x);
        let a = self.rate();
        let e = (-a * r).exp();
        let u: Vec<f64> = x[..3].iter().map(|v| v / r).collect();
        let mut he = vec![0.0; 9];
        for i in 0..3 {
            for j in 0..3 {
                let d = if i == j { 1.0 } else { 0.0 };
                he[3 * i + j] = e * (a * a * u[i] * u[j] - a * (d - u[i] * u[j]) / r);
            }
        }
        Some(match self.kind {
            HydrogenicKind::Ground => he,
            HydrogenicKind::Excited => {
                let de: Vec<f64> = u.iter().map(|ui| -a * ui * e).collect();
                let mut h = vec![0.0; 9];
                for i in 0..3 {
                    for j in 0..3 {
                        let mut v = x[0] * he[3 * i + j];
                        if i == 0 {
                            v += de[j];
                        }
                        if j == 0 {
                            v += de[i];
                        }
                        h[3 * i + j] = v;
                    }
                }
                h
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fd::{fd_gradient, fd_hessian};

    #[test]
    fn potential_of_helium_like_configuration() {
        let cfg = Configuration::atomic(2.0, vec![[1.0, 0.0, 0.0], [0.0, 2.0, 0.0]]).unwrap();
        let v = coulomb_potential(&cfg).unwrap();
        assert!((v - (-2.0 - 1.0 + 1.0 / 5f64.sqrt())).abs() < 1e-15);
        let coincident = Configuration::atomic(1.0, vec![[0.0; 3]]).unwrap();
        assert!(matches!(coulomb_potential(&coincident), Err(Error::Singular(_))));
    }

    #[test]
    fn analytic_derivatives_agree_with_differences() {
        let x = [0.4, -0.7, 0.2];
        for kind in [HydrogenicKind::Ground, HydrogenicKind::Excited] {
            let s = Hydrogenic { kind, z: 1.5 };
            let s0 = FdScheme::default();
            let g = fd_gradient(&s, &x, &s0).unwrap();
            let h = fd_hessian(&s, &x, &s0).unwrap();
            for (a, b) in g.iter().zip(s.gradient(&x).unwrap()) {
                assert!((a - b).abs() < 1e-9);
            }
            for (a, b) in h.iter().zip(s.hessian(&x).unwrap()) {
                assert!((a - b).abs() < 1e-6);
            }
            let tr: f64 = (0..3).map(|i| s.hessian(&x).unwrap()[4 * i]).sum();
            assert!((tr - s.laplacian(&x).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn hydrogenic_residuals() {
        for kind in [HydrogenicKind::Ground, HydrogenicKind::Excited] {
            for z in [1.0, 2.0] {
                let (psi, e) = hydrogenic_state(z, kind);
                let cfg = Configuration::atomic(z, vec![[0.6, 0.0, 0.8]]).unwrap();
                assert!(hamiltonian_residual(&psi, e, &cfg, &FdScheme::default()).unwrap() < 1e-6);
            }
        }
    }
}
