use crate::error::{Error, Result};
use crate::harmonics::poly::{CompiledPolynomial, Polynomial};
use crate::harmonics::projection::{has_component_exact, project_invariant, project_monte_carlo, project_polynomial, to_rational, Projection, Projector};
use crate::harmonics::HarmonicBasis;
use serde::{Deserialize, Serialize};

/// b_l(n, k) = (k+2)(k+n) - l(l+n-2); Δ(r^{k+2} Y_l) = b_l r^k Y_l.
pub fn resonance_coefficient(n: usize, k: usize, l: usize) -> i64 {
    let (n, k, l) = (n as i64, k as i64, l as i64);
    (k + 2) * (k + n) - l * (l + n - 2)
}

/// Data on S^{n-1} to be extended k-homogeneously.
pub enum Source<'a> {
    Polynomial(Polynomial<f64>),
    Function(&'a (dyn Fn(&[f64]) -> f64 + Sync)),
}

impl Source<'_> {
    fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Source::Polynomial(p) => p.eval(x),
            Source::Function(f) => f(x),
        }
    }
}

/// Tolerances for declaring the resonant component absent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonanceGate {
    /// Bound on max |c|/σ for sampled projections.
    pub max_z: f64,
    /// Bound on the coefficient norm for deterministic quadrature.
    pub abs_tol: f64,
}

impl Default for ResonanceGate {
    fn default() -> Self {
        ResonanceGate { max_z: 3.0, abs_tol: 1e-7 }
    }
}

#[derive(Debug, Clone)]
pub struct DegreeTerm {
    pub degree: u32,
    pub divisor: i64,
    pub projection: Projection,
    /// Σ_m c_m Y_m as a homogeneous polynomial of degree l.
    pub source_part: Polynomial<f64>,
    compiled: CompiledPolynomial,
}

/// u = r^{k+2} Σ_{l ≠ k+2} Σ_m c_{lm}/b_l Y_{lm}, truncated at l_max.
#[derive(Debug, Clone)]
pub struct HomogeneousSolution {
    pub n: usize,
    pub k: usize,
    pub lmax: u32,
    pub terms: Vec<DegreeTerm>,
    /// Projection onto the resonant degree, kept for reporting.
    pub resonant: Option<Projection>,
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

impl HomogeneousSolution {
    pub fn eval(&self, x: &[f64]) -> f64 {
        let r = norm(x);
        let p = (self.k + 2) as i32;
        self.terms
            .iter()
            .map(|t| t.compiled.eval(x) / t.divisor as f64 * r.powi(p - t.degree as i32))
            .sum()
    }

    /// r^k Σ_l Σ_m c_{lm} Y_{lm}, which equals Δu away from the origin.
    pub fn truncated_source(&self, x: &[f64]) -> f64 {
        let r = norm(x);
        let k = self.k as i32;
        self.terms.iter().map(|t| t.compiled.eval(x) * r.powi(k - t.degree as i32)).sum()
    }
}

fn basis_for(n: usize, l: u32, projector: &Projector) -> Result<HarmonicBasis> {
    match projector {
        Projector::InvariantQuadrature { .. } => {
            if n != 6 {
                return Err(Error::InvalidInput("invariant quadrature is defined on S^5".into()));
            }
            HarmonicBasis::diagonal_so3(l)
        }
        _ => HarmonicBasis::full(n, l),
    }
}

fn project(source: &Source, basis: &HarmonicBasis, projector: &Projector, l: u32) -> Result<Projection> {
    match (projector, source) {
        (Projector::ExactMoments, Source::Polynomial(p)) => Ok(project_polynomial(p, basis)),
        (Projector::ExactMoments, Source::Function(_)) => {
            Err(Error::InvalidInput("exact moments need a polynomial source".into()))
        }
        (Projector::MonteCarlo { samples, seed }, _) => {
            Ok(project_monte_carlo(|x| source.eval(x), basis, *samples, seed.wrapping_add(l as u64)))
        }
        (Projector::InvariantQuadrature { order }, _) => project_invariant(|x| source.eval(x), basis, *order),
    }
}

/// Solves Δu = r^k G(ω) for u homogeneous of degree k+2, with G given on
/// S^{n-1}. Fails with [`Error::Resonance`] when G has a component of degree
/// k+2, where b_l vanishes.
pub fn solve_homogeneous(
    n: usize,
    k: usize,
    source: Source,
    lmax: u32,
    projector: Projector,
    gate: ResonanceGate,
) -> Result<HomogeneousSolution> {
    if n < 2 {
        return Err(Error::InvalidInput("need n >= 2".into()));
    }
    let res_deg = (k + 2) as u32;
    let mut resonant = None;
    if res_deg <= lmax || matches!(projector, Projector::ExactMoments) {
        let basis = basis_for(n, res_deg, &projector)?;
        let pr = project(&source, &basis, &projector, res_deg)?;
        let rejected = match (&projector, &source) {
            (Projector::ExactMoments, Source::Polynomial(p)) => has_component_exact(&to_rational(p)?, res_deg),
            (Projector::MonteCarlo { .. }, _) => pr.max_z() > gate.max_z,
            _ => pr.norm() > gate.abs_tol,
        };
        if rejected {
            let tol = if matches!(projector, Projector::MonteCarlo { .. }) { gate.max_z } else { gate.abs_tol };
            let size = if matches!(projector, Projector::MonteCarlo { .. }) { pr.max_z() } else { pr.norm() };
            return Err(Error::Resonance { degree: res_deg as usize, norm: size, tol });
        }
        resonant = Some(pr);
    }
    let mut terms = Vec::new();
    for l in 0..=lmax {
        if l == res_deg {
            continue;
        }
        let basis = basis_for(n, l, &projector)?;
        if basis.is_empty() {
            continue;
        }
        let projection = project(&source, &basis, &projector, l)?;
        let mut part = Polynomial::zero(n);
        for (c, y) in projection.coefficients.iter().zip(basis.elements()) {
            if c.abs() > 1e-14 {
                part = part.add(&y.scale(c));
            }
        }
        let compiled = part.compile();
        let divisor = resonance_coefficient(n, k, l as usize);
        terms.push(DegreeTerm { degree: l, divisor, projection, source_part: part, compiled });
    }
    Ok(HomogeneousSolution { n, k, lmax, terms, resonant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FnField;
    use crate::geometry::fd::{fd_laplacian, FdScheme};

    #[test]
    fn divisor_values() {
        assert_eq!(resonance_coefficient(6, 0, 2), 0);
        assert_eq!(resonance_coefficient(6, 0, 0), 12);
        assert_eq!(resonance_coefficient(6, 0, 4), -20);
        assert_eq!(resonance_coefficient(3, 1, 3), 0);
    }

    #[test]
    fn exact_solution_for_polynomial_data() {
        // G = x1 x2 x3 on S^2 with k = 0; pure degree 3 so u = r^2 G(ω)/(6 - 12)
        let g = Polynomial::<f64>::term(vec![1, 1, 1], 1.0);
        let sol = solve_homogeneous(3, 0, Source::Polynomial(g), 4, Projector::ExactMoments, ResonanceGate::default()).unwrap();
        let x = [0.3, -0.4, 0.5];
        let r = 0.5f64.sqrt();
        assert!((sol.eval(&x) - r * r * (x[0] * x[1] * x[2] / r.powi(3)) / -6.0).abs() < 1e-13);
        let f = FnField::new(3, |p: &[f64]| sol.eval(p));
        let lap = fd_laplacian(&f, &x, &FdScheme::default()).unwrap();
        assert!((lap - sol.truncated_source(&x)).abs() < 1e-6);
    }

    #[test]
    fn resonant_polynomial_rejected() {
        let g = Polynomial::<f64>::term(vec![1, 1, 0, 0, 0, 0], 1.0);
        let r = solve_homogeneous(6, 0, Source::Polynomial(g), 4, Projector::ExactMoments, ResonanceGate::default());
        assert!(matches!(r, Err(Error::Resonance { degree: 2, .. })));
        let r2 = Polynomial::<f64>::term(vec![2, 0, 0, 0, 0, 0], 1.0);
        let partial = solve_homogeneous(6, 0, Source::Polynomial(r2.add(&Polynomial::term(vec![0, 2, 0, 0, 0, 0], 1.0))), 4, Projector::ExactMoments, ResonanceGate::default());
        assert!(matches!(partial, Err(Error::Resonance { .. })));
    }
}
