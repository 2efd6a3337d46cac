use super::vec3::{self, Vec3};
use crate::error::{Error, Result};
use num_traits::Float;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Nucleus<T = f64> {
    pub position: Vec3<T>,
    pub charge: T,
}

/// Electron positions together with the fixed nuclei.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Configuration<T = f64> {
    pub electrons: Vec<Vec3<T>>,
    pub nuclei: Vec<Nucleus<T>>,
}

impl<T: Float> Configuration<T> {
    pub fn new(electrons: Vec<Vec3<T>>, nuclei: Vec<Nucleus<T>>) -> Result<Self> {
        let finite = |p: &Vec3<T>| p.iter().all(|c| c.is_finite());
        if !electrons.iter().all(finite) || !nuclei.iter().all(|n| finite(&n.position)) {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
        if nuclei.iter().any(|n| !(n.charge > T::zero())) {
            return Err(Error::InvalidInput("nuclear charges must be positive".into()));
        }
        Ok(Configuration { electrons, nuclei })
    }

    /// A single nucleus of charge `z` at the origin.
    pub fn atomic(z: T, electrons: Vec<Vec3<T>>) -> Result<Self> {
        Self::new(electrons, vec![Nucleus { position: vec3::zero(), charge: z }])
    }

    pub fn n_electrons(&self) -> usize {
        self.electrons.len()
    }

    pub fn dim(&self) -> usize {
        3 * self.electrons.len()
    }

    pub fn flatten(&self) -> Vec<T> {
        self.electrons.iter().flat_map(|p| p.iter().copied()).collect()
    }

    /// Same nuclei, electrons read from a flat 3N vector.
    pub fn with_flat(&self, x: &[T]) -> Self {
        let electrons = x.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
        Configuration { electrons, nuclei: self.nuclei.clone() }
    }

    /// Distance in R^{3N} to the union of the coalescence planes.
    pub fn singular_distance(&self) -> T {
        let sqrt2 = T::from(2.0).unwrap().sqrt();
        let mut d = T::infinity();
        for (i, xi) in self.electrons.iter().enumerate() {
            for n in &self.nuclei {
                d = d.min(vec3::dist(xi, &n.position));
            }
            for xj in &self.electrons[i + 1..] {
                d = d.min(vec3::dist(xi, xj) / sqrt2);
            }
        }
        d
    }

    pub fn check_nonsingular(&self) -> Result<()> {
        if self.singular_distance() > T::zero() {
            Ok(())
        } else {
            Err(Error::Singular("particle coalescence".into()))
        }
    }

    /// Nuclear repulsion, a constant which is not part of V.
    pub fn internuclear_repulsion(&self) -> T {
        let mut u = T::zero();
        for (k, a) in self.nuclei.iter().enumerate() {
            for b in &self.nuclei[k + 1..] {
                u = u + a.charge * b.charge / vec3::dist(&a.position, &b.position);
            }
        }
        u
    }
}

/// Helper for flat 3N coordinate slices.
pub fn electron<T: Float>(x: &[T], i: usize) -> Vec3<T> {
    [x[3 * i], x[3 * i + 1], x[3 * i + 2]]
}
