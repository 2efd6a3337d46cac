//! Projections of functions on S^{n-1} onto harmonic bases.
use super::basis::{harmonic_spanning_set, HarmonicBasis, MomentTable, Symmetry};
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::geometry::quadrature::composite;
use crate::geometry::sampling::sphere_monte_carlo;
use crate::geometry::sphere::{normalized_moment_exact, sphere_area};
use crate::Rational;
use num_traits::{FromPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Coefficients ⟨G, Y_m⟩ with standard errors when estimated by sampling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Projection {
    pub coefficients: Vec<f64>,
    pub std_errors: Option<Vec<f64>>,
}

impl Projection {
    pub fn norm(&self) -> f64 {
        self.coefficients.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// max |c_m| / σ_m; infinite for an exact nonzero coefficient.
    pub fn max_z(&self) -> f64 {
        match &self.std_errors {
            Some(se) => self.coefficients.iter().zip(se).map(|(c, s)| (c / s).abs()).fold(0.0, f64::max),
            None => {
                if self.coefficients.iter().all(|c| *c == 0.0) {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }
}

/// How coefficients are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Projector {
    /// Monomial moments; polynomial sources only.
    ExactMoments,
    MonteCarlo { samples: usize, seed: u64 },
    /// Reduced (φ, u) quadrature on S^5 for diagonal-SO(3) invariant data.
    InvariantQuadrature { order: usize },
}

/// ⟨p, Y_m⟩ from closed-form moments.
pub fn project_polynomial(p: &Polynomial<f64>, basis: &HarmonicBasis) -> Projection {
    let maxdeg = p.degree().unwrap_or(0).max(basis.degree);
    let table = MomentTable::new(basis.n, maxdeg + basis.degree);
    let coefficients = basis
        .elements()
        .iter()
        .map(|y| {
            let mut s = 0.0;
            for (ma, ca) in p.terms() {
                for (mb, cb) in y.terms() {
                    s += ca * cb * table.product(&ma.0, &mb.0);
                }
            }
            s
        })
        .collect();
    Projection { coefficients, std_errors: None }
}

/// Exact test whether p has a nonzero component of degree l on S^{n-1}.
pub fn has_component_exact(p: &Polynomial<Rational>, l: u32) -> bool {
    let n = p.nvars();
    harmonic_spanning_set(n, l).iter().any(|h| {
        let mut s = Rational::zero();
        for (ma, ca) in p.terms() {
            for (mb, cb) in h.terms() {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                s += ca * cb * normalized_moment_exact(&e);
            }
        }
        !s.is_zero()
    })
}

/// Exact rational image of an f64 polynomial.
pub fn to_rational(p: &Polynomial<f64>) -> Result<Polynomial<Rational>> {
    let mut out = Polynomial::zero(p.nvars());
    for (m, c) in p.terms() {
        let r = Rational::from_f64(*c).ok_or_else(|| Error::InvalidInput("non-finite coefficient".into()))?;
        out.add_term(m.clone(), r);
    }
    Ok(out)
}

/// ⟨f, Y_m⟩ estimated from uniform samples, |S| mean(f Y_m).
pub fn project_monte_carlo<F>(f: F, basis: &HarmonicBasis, samples: usize, seed: u64) -> Projection
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let k = basis.len();
    let est = sphere_monte_carlo(basis.n, samples, seed, k, |x, out| {
        basis.eval_into(x, out);
        let v = f(x);
        out.iter_mut().for_each(|o| *o *= v);
    });
    let area = sphere_area(basis.n);
    Projection {
        coefficients: est.mean.iter().map(|m| m * area).collect(),
        std_errors: Some((0..k).map(|i| est.std_error(i) * area).collect()),
    }
}

/// Nodes (point on S^5, weight) of the reduced rule with x = (cos φ, 0, 0),
/// y = sin φ (u, √(1-u²), 0).
pub fn invariant_nodes(order: usize) -> Vec<([f64; 6], f64)> {
    let (d1, d2) = (PI / 6.0, PI / 4.0);
    let phi_breaks = [0.0, d1 - 0.05, d1, d1 + 0.05, d2 - 0.05, d2, d2 + 0.05, PI / 2.0];
    let u_breaks = [-1.0, -0.99, -0.9, 0.0, 0.9, 0.99, 1.0];
    let (ph, pw) = composite::<f64>(&phi_breaks, order);
    let (uh, uw) = composite::<f64>(&u_breaks, order);
    let mut nodes = Vec::with_capacity(ph.len() * uh.len());
    for (phi, wphi) in ph.iter().zip(&pw) {
        let (t, s) = phi.sin_cos();
        for (u, wu) in uh.iter().zip(&uw) {
            let v = (1.0 - u * u).max(0.0).sqrt();
            let p = [s, 0.0, 0.0, t * u, t * v, 0.0];
            nodes.push((p, 8.0 * PI * PI * s * s * t * t * wphi * wu));
        }
    }
    nodes
}

/// ∫_{S^5} f Y_m by the reduced rule. Valid only for invariant f and Y.
pub fn project_invariant<F>(f: F, basis: &HarmonicBasis, order: usize) -> Result<Projection>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if basis.symmetry != Symmetry::DiagonalSO3 || basis.n != 6 {
        return Err(Error::InvalidInput("invariant quadrature needs a diagonal-SO(3) basis on S^5".into()));
    }
    let nodes = invariant_nodes(order);
    let k = basis.len();
    let partial: Vec<Vec<f64>> = nodes
        .par_chunks(1024)
        .map(|chunk| {
            let mut c = vec![0.0; k];
            let mut y = vec![0.0; k];
            for (p, w) in chunk {
                let v = f(p) * w;
                basis.eval_into(p, &mut y);
                c.iter_mut().zip(&y).for_each(|(a, b)| *a += v * b);
            }
            c
        })
        .collect();
    let mut c = vec![0.0; k];
    for part in &partial {
        c.iter_mut().zip(part).for_each(|(a, b)| *a += b);
    }
    Ok(Projection { coefficients: c, std_errors: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_rule_measure() {
        let total: f64 = invariant_nodes(16).iter().map(|(_, w)| w).sum();
        assert!((total - PI.powi(3)).abs() < 1e-12);
    }

    #[test]
    fn polynomial_projection_recovers_itself() {
        let b = HarmonicBasis::full(3, 2).unwrap();
        let y = b.elements()[3].clone();
        let pr = project_polynomial(&y, &b);
        for (i, c) in pr.coefficients.iter().enumerate() {
            assert!((c - if i == 3 { 1.0 } else { 0.0 }).abs() < 1e-13);
        }
    }

    #[test]
    fn exact_component_detection() {
        let r2 = Polynomial::<f64>::term(vec![2, 0, 0], 1.0)
            .add(&Polynomial::term(vec![0, 2, 0], 1.0))
            .add(&Polynomial::term(vec![0, 0, 2], 1.0));
        let q = to_rational(&r2).unwrap();
        assert!(!has_component_exact(&q, 2));
        assert!(has_component_exact(&q, 0));
        let p = to_rational(&Polynomial::term(vec![2, 0, 0], 1.0)).unwrap();
        assert!(has_component_exact(&p, 2));
    }

    #[test]
    fn sampled_projection_within_error() {
        let b = HarmonicBasis::full(3, 1).unwrap();
        let pr = project_monte_carlo(|x| x[0] + 2.0 * x[2], &b, 200_000, 11);
        let exact = project_polynomial(&Polynomial::term(vec![1, 0, 0], 1.0).add(&Polynomial::term(vec![0, 0, 1], 2.0)), &b);
        let se = pr.std_errors.as_ref().unwrap();
        for i in 0..3 {
            assert!((pr.coefficients[i] - exact.coefficients[i]).abs() < 4.0 * se[i] + 1e-12);
        }
    }

    #[test]
    fn invariant_rule_matches_moments() {
        let b = HarmonicBasis::diagonal_so3(4).unwrap();
        let p = b.elements()[1].clone();
        let cp = p.compile();
        let pr = project_invariant(|x| cp.eval(x), &b, 12).unwrap();
        for (i, c) in pr.coefficients.iter().enumerate() {
            assert!((c - if i == 1 { 1.0 } else { 0.0 }).abs() < 1e-12);
        }
    }
}
