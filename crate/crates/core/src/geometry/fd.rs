//! Central finite differences with Richardson extrapolation.
use crate::error::{Error, Result};
use crate::field::ScalarField;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdScheme {
    /// Base step relative to max(1, |x|).
    pub relative_step: f64,
    /// Fixed absolute step; overrides `relative_step` when set.
    pub absolute_step: Option<f64>,
    pub richardson: usize,
}

impl Default for FdScheme {
    fn default() -> Self {
        FdScheme { relative_step: 1e-4, absolute_step: None, richardson: 1 }
    }
}

impl FdScheme {
    pub fn fixed(h: f64, richardson: usize) -> Self {
        FdScheme { relative_step: h, absolute_step: Some(h), richardson }
    }

    pub fn base_step(&self, x: &[f64]) -> f64 {
        match self.absolute_step {
            Some(h) => h,
            None => {
                let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                self.relative_step * r.max(1.0)
            }
        }
    }

    fn clearance(&self, f: &dyn ScalarField, x: &[f64]) -> Result<f64> {
        if x.len() != f.dim() {
            return Err(Error::InvalidInput(format!("point has dimension {}, field {}", x.len(), f.dim())));
        }
        let h = self.base_step(x);
        let d = f.singular_distance(x);
        if d < 4.0 * h {
            return Err(Error::TooCloseToSingularSet { clearance: d, required: 4.0 * h });
        }
        Ok(h)
    }

    /// Romberg table over steps h, h/2, ..., for an O(h^2) estimator.
    fn extrapolate(&self, h: f64, mut est: impl FnMut(f64) -> f64) -> f64 {
        let levels = self.richardson + 1;
        let mut row: Vec<f64> = (0..levels).map(|m| est(h / (1u64 << m) as f64)).collect();
        for k in 1..levels {
            let p = 4f64.powi(k as i32);
            for m in 0..levels - k {
                row[m] = (p * row[m + 1] - row[m]) / (p - 1.0);
            }
        }
        row[0]
    }
}

fn shifted(x: &[f64], moves: &[(usize, f64)]) -> Vec<f64> {
    let mut y = x.to_vec();
    for &(i, d) in moves {
        y[i] += d;
    }
    y
}

pub fn fd_partial(f: &dyn ScalarField, x: &[f64], i: usize, scheme: &FdScheme) -> Result<f64> {
    let h0 = scheme.clearance(f, x)?;
    Ok(scheme.extrapolate(h0, |h| {
        (f.value(&shifted(x, &[(i, h)])) - f.value(&shifted(x, &[(i, -h)]))) / (2.0 * h)
    }))
}

pub fn fd_gradient(f: &dyn ScalarField, x: &[f64], scheme: &FdScheme) -> Result<Vec<f64>> {
    (0..x.len()).map(|i| fd_partial(f, x, i, scheme)).collect()
}

/// Second partial ∂_i ∂_j f.
pub fn fd_second(f: &dyn ScalarField, x: &[f64], i: usize, j: usize, scheme: &FdScheme) -> Result<f64> {
    let h0 = scheme.clearance(f, x)?;
    if i == j {
        let f0 = f.value(x);
        return Ok(scheme.extrapolate(h0, |h| {
            (f.value(&shifted(x, &[(i, h)])) - 2.0 * f0 + f.value(&shifted(x, &[(i, -h)]))) / (h * h)
        }));
    }
    Ok(scheme.extrapolate(h0, |h| {
        let pp = f.value(&shifted(x, &[(i, h), (j, h)]));
        let pm = f.value(&shifted(x, &[(i, h), (j, -h)]));
        let mp = f.value(&shifted(x, &[(i, -h), (j, h)]));
        let mm = f.value(&shifted(x, &[(i, -h), (j, -h)]));
        (pp - pm - mp + mm) / (4.0 * h * h)
    }))
}

pub fn fd_laplacian(f: &dyn ScalarField, x: &[f64], scheme: &FdScheme) -> Result<f64> {
    let h0 = scheme.clearance(f, x)?;
    let f0 = f.value(x);
    Ok(scheme.extrapolate(h0, |h| {
        let mut s = 0.0;
        for i in 0..x.len() {
            s += f.value(&shifted(x, &[(i, h)])) - 2.0 * f0 + f.value(&shifted(x, &[(i, -h)]));
        }
        s / (h * h)
    }))
}

pub fn fd_hessian(f: &dyn ScalarField, x: &[f64], scheme: &FdScheme) -> Result<Vec<f64>> {
    let d = x.len();
    let mut hess = vec![0.0; d * d];
    for i in 0..d {
        for j in i..d {
            let v = fd_second(f, x, i, j, scheme)?;
            hess[i * d + j] = v;
            hess[j * d + i] = v;
        }
    }
    Ok(hess)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FnField;

    #[test]
    fn polynomial_is_exact_up_to_roundoff() {
        let f = FnField::new(3, |x: &[f64]| x[0] * x[0] * x[1] + 3.0 * x[2] * x[2]);
        let x = [0.3, -1.2, 0.5];
        let s = FdScheme::default();
        assert!((fd_laplacian(&f, &x, &s).unwrap() - (2.0 * x[1] + 6.0)).abs() < 1e-6);
        assert!((fd_second(&f, &x, 0, 1, &s).unwrap() - 2.0 * x[0]).abs() < 1e-6);
        let g = fd_gradient(&f, &x, &s).unwrap();
        assert!((g[2] - 6.0 * x[2]).abs() < 1e-9);
    }

    #[test]
    fn second_order_without_extrapolation() {
        let f = FnField::new(1, |x: &[f64]| x[0].sin());
        let err = |h: f64| {
            (fd_second(&f, &[1.0], 0, 0, &FdScheme::fixed(h, 0)).unwrap() + 1f64.sin()).abs()
        };
        let slope = (err(0.02) / err(0.01)).log2();
        assert!((slope - 2.0).abs() < 0.05, "slope {slope}");
    }

    #[test]
    fn rejects_stencil_near_singular_set() {
        let f = FnField::new(1, |x: &[f64]| x[0].abs()).with_singular(|x: &[f64]| x[0].abs());
        let r = fd_laplacian(&f, &[1e-5], &FdScheme::default());
        assert!(matches!(r, Err(Error::TooCloseToSingularSet { .. })));
    }
}
