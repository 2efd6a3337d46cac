//! Newton potential w = Γ * g of a density on a ball, with Γ the fundamental
//! solution of the Laplacian and ΔΓ = δ.
use crate::geometry::quadrature::{composite, gauss_legendre};
use crate::geometry::sampling::{monte_carlo, sample_sphere};
use crate::geometry::sphere::sphere_area;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NewtonOptions {
    /// Antithetic direction pairs.
    pub pairs: usize,
    pub seed: u64,
    /// Log-spaced radial panels for second derivatives.
    pub panels: usize,
    pub points_per_panel: usize,
    /// Inner end of the log-spaced radial grid.
    pub rho_min: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { pairs: 50_000, seed: 0, panels: 40, points_per_panel: 8, rho_min: 1e-7 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

pub struct NewtonPotential<'a> {
    pub n: usize,
    pub center: Vec<f64>,
    pub radius: f64,
    pub density: &'a (dyn Fn(&[f64]) -> f64 + Sync),
    pub options: NewtonOptions,
}

impl<'a> NewtonPotential<'a> {
    pub fn new(n: usize, density: &'a (dyn Fn(&[f64]) -> f64 + Sync), options: NewtonOptions) -> Self {
        NewtonPotential { n, center: vec![0.0; n], radius: 1.0, density, options }
    }

    /// Distance from x to the sphere along θ.
    fn rho_max(&self, x: &[f64], th: &[f64]) -> f64 {
        let mut b = 0.0;
        let mut c = -self.radius * self.radius;
        for i in 0..self.n {
            let d = x[i] - self.center[i];
            b += d * th[i];
            c += d * d;
        }
        -b + (b * b - c).max(0.0).sqrt()
    }

    fn inside(&self, x: &[f64]) -> bool {
        let d2: f64 = x.iter().zip(&self.center).map(|(a, c)| (a - c) * (a - c)).sum();
        d2 < self.radius * self.radius
    }

    fn along(&self, x: &[f64], th: &[f64], rho: f64, buf: &mut [f64]) -> f64 {
        for i in 0..self.n {
            buf[i] = x[i] + rho * th[i];
        }
        (self.density)(buf)
    }

    fn sample<F>(&self, f: F) -> Estimate
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        let n = self.n;
        let est = monte_carlo(n, self.options.pairs.max(2), self.options.seed, 1, |rng, th| sample_sphere(rng, th), |th, out| {
            let neg: Vec<f64> = th.iter().map(|v| -v).collect();
            out[0] = 0.5 * (f(th) + f(&neg));
        });
        let area = sphere_area(n);
        Estimate { value: area * est.mean[0], std_error: area * est.std_error(0) }
    }

    /// w(x) = ∫ Γ(x - y) g(y) dy in polar coordinates around x.
    pub fn eval(&self, x: &[f64]) -> Estimate {
        let n = self.n;
        let area = sphere_area(n);
        let (gx, gw) = gauss_legendre::<f64>(self.options.points_per_panel.max(8) * 2);
        self.sample(|th| {
            let rm = self.rho_max(x, th);
            let mut buf = vec![0.0; n];
            let mut s = 0.0;
            for (t, w) in gx.iter().zip(&gw) {
                let rho = 0.5 * rm * (t + 1.0);
                let kernel = if n == 2 {
                    rho * rho.ln() / (2.0 * std::f64::consts::PI)
                } else {
                    rho / ((2.0 - n as f64) * area)
                };
                s += 0.5 * rm * w * kernel * self.along(x, th, rho, &mut buf);
            }
            s
        })
    }

    /// D_ij w(x) = ∫_S K_ij(θ)[∫_0^ρmax (g(x+ρθ) - g(x))/ρ dρ + g(x) ln ρmax] dθ
    /// + δ_ij g(x)/n, with K_ij = (δ_ij - n θ_i θ_j)/|S^{n-1}|.
    pub fn second_derivative(&self, x: &[f64], i: usize, j: usize) -> Estimate {
        let n = self.n;
        assert!(self.inside(x), "evaluation point must lie inside the ball");
        let area = sphere_area(n);
        let g0 = (self.density)(x);
        let opt = self.options;
        let delta = if i == j { 1.0 } else { 0.0 };
        let est = self.sample(|th| {
            let rm = self.rho_max(x, th);
            let lo = opt.rho_min.min(0.5 * rm);
            let mut breaks = vec![0.0];
            let ratio = (rm / lo).ln() / opt.panels as f64;
            for p in 0..=opt.panels {
                breaks.push(lo * (ratio * p as f64).exp());
            }
            *breaks.last_mut().unwrap() = rm;
            let (nodes, weights) = composite::<f64>(&breaks, opt.points_per_panel);
            let mut buf = vec![0.0; n];
            let mut radial = 0.0;
            for (rho, w) in nodes.iter().zip(&weights) {
                radial += w * (self.along(x, th, *rho, &mut buf) - g0) / rho;
            }
            let k = (delta - n as f64 * th[i] * th[j]) / area;
            k * (radial + g0 * rm.ln())
        });
        Estimate { value: est.value + delta * g0 / n as f64, std_error: est.std_error }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_density_in_three_dimensions() {
        // w = (|x|^2 - 3)/6 for g = 1 on the unit ball of R^3
        let one = |_: &[f64]| 1.0;
        let np = NewtonPotential::new(3, &one, NewtonOptions { pairs: 4000, ..Default::default() });
        let w = np.eval(&[0.0, 0.0, 0.0]);
        assert!((w.value + 0.5).abs() < 4.0 * w.std_error + 1e-12, "{w:?}");
        let x = [0.3, 0.1, -0.2];
        let w = np.eval(&x);
        assert!((w.value - (0.14 - 3.0) / 6.0).abs() < 4.0 * w.std_error + 1e-3, "{w:?}");
        let d = np.second_derivative(&x, 0, 0);
        assert!((d.value - 1.0 / 3.0).abs() < 4.0 * d.std_error + 1e-6, "{d:?}");
        let d = np.second_derivative(&x, 0, 1);
        assert!(d.value.abs() < 4.0 * d.std_error + 1e-6, "{d:?}");
    }

    #[test]
    fn constant_density_in_six_dimensions() {
        let one = |_: &[f64]| 1.0;
        let np = NewtonPotential::new(6, &one, NewtonOptions { pairs: 4000, ..Default::default() });
        let w = np.eval(&[0.0; 6]);
        assert!((w.value + 0.125).abs() < 1e-12, "{w:?}");
        let d = np.second_derivative(&[0.0; 6], 2, 2);
        assert!((d.value - 1.0 / 6.0).abs() < 1e-12, "{d:?}");
    }
}
