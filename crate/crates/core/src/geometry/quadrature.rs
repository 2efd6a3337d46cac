//! Gauss-Legendre rules and the Hylleraas-type integrals over s, t, r.
use crate::error::{Error, Result};
use num_traits::{Float, FloatConst};

/// Nodes and weights of the m-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre<T: Float + FloatConst>(m: usize) -> (Vec<T>, Vec<T>) {
    assert!(m > 0);
    let one = T::one();
    let two = one + one;
    let c = |v: f64| T::from(v).unwrap();
    let mut nodes = vec![T::zero(); m];
    let mut weights = vec![T::zero(); m];
    for i in 0..m.div_ceil(2) {
        let mut x = (T::PI() * c(i as f64 + 0.75) / c(m as f64 + 0.5)).cos();
        let mut dp = one;
        for _ in 0..100 {
            let (mut p0, mut p1) = (one, x);
            for k in 2..=m {
                let k = c(k as f64);
                let p2 = ((two * k - one) * x * p1 - (k - one) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let pm = if m == 1 { one } else { p0 };
            let pn = if m == 1 { x } else { p1 };
            dp = c(m as f64) * (x * pn - pm) / (x * x - one);
            let dx = pn / dp;
            x = x - dx;
            if dx.abs() <= T::epsilon() * c(4.0) {
                break;
            }
        }
        let w = two / ((one - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite rule with `m` points on each of the panels between breakpoints.
pub fn composite<T: Float + FloatConst>(breaks: &[T], m: usize) -> (Vec<T>, Vec<T>) {
    let (x, w) = gauss_legendre::<T>(m);
    let half = T::from(0.5).unwrap();
    let mut nodes = Vec::with_capacity(m * breaks.len());
    let mut weights = Vec::with_capacity(m * breaks.len());
    for pair in breaks.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let (mid, rad) = ((a + b) * half, (b - a) * half);
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(mid + rad * *xi);
            weights.push(rad * *wi);
        }
    }
    (nodes, weights)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub error: T,
    pub order: usize,
}

/// Rule of order m for ∫∫∫ f(s,t,r) over 0<s<1, 0<t<√(1-s²), |s-t|<r<s+t.
///
/// Polar coordinates s = ρ cos φ, t = ρ sin φ and a split at φ = π/4 keep the
/// integrand smooth on every panel.
fn hylleraas_rule<T, F>(f: &F, m: usize) -> T
where
    T: Float + FloatConst,
    F: Fn(T, T, T) -> T,
{
    let half = T::from(0.5).unwrap();
    let (x, w) = gauss_legendre::<T>(m);
    let quarter = T::FRAC_PI_4();
    let mut total = T::zero();
    for panel in 0..2 {
        let phi0 = if panel == 0 { T::zero() } else { quarter };
        for (xp, wp) in x.iter().zip(&w) {
            let phi = phi0 + quarter * half * (*xp + T::one());
            let wphi = quarter * half * *wp;
            let (sn, cs) = phi.sin_cos();
            for (xr, wr) in x.iter().zip(&w) {
                let rho = half * (*xr + T::one());
                let (s, t) = (rho * cs, rho * sn);
                let (lo, hi) = ((s - t).abs(), s + t);
                let rad = (hi - lo) * half;
                let mut inner = T::zero();
                for (xq, wq) in x.iter().zip(&w) {
                    inner = inner + *wq * f(s, t, lo + rad * (*xq + T::one()));
                }
                total = total + wphi * half * *wr * rho * rad * inner;
            }
        }
    }
    total
}

/// Integral over the Hylleraas domain with relative tolerance `tol`.
///
/// The order doubles from 16 until two successive rules agree.
pub fn hylleraas_integrate<T, F>(f: F, tol: T) -> Result<QuadratureResult<T>>
where
    T: Float + FloatConst,
    F: Fn(T, T, T) -> T,
{
    let mut m = 16;
    let mut prev = hylleraas_rule(&f, m);
    let mut err = T::infinity();
    while m < 256 {
        m *= 2;
        let cur = hylleraas_rule(&f, m);
        err = (cur - prev).abs();
        let scale = cur.abs().max(T::min_positive_value());
        if err <= tol * scale {
            return Ok(QuadratureResult { value: cur, error: err, order: m });
        }
        prev = cur;
    }
    Err(Error::ToleranceNotReached {
        target: tol.to_f64().unwrap_or(f64::NAN),
        achieved: (err / prev.abs()).to_f64().unwrap_or(f64::NAN),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rule_integrates_polynomials() {
        let (x, w) = gauss_legendre::<f64>(10);
        for k in 0..20u32 {
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k as i32)).sum();
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert_abs_diff_eq!(q, exact, epsilon = 1e-14);
        }
        let (x1, w1) = gauss_legendre::<f64>(1);
        assert_eq!((x1[0], w1[0]), (0.0, 2.0));
    }

    #[test]
    fn composite_rule_on_panels() {
        let (x, w) = composite(&[0.0, 0.5, 2.0], 6);
        let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.exp()).sum();
        assert_abs_diff_eq!(q, 2f64.exp() - 1.0, epsilon = 1e-12);
    }

    #[test]
    fn single_precision_rule() {
        let (x, w) = gauss_legendre::<f32>(8);
        let q: f32 = x.iter().zip(&w).map(|(x, w)| w * x * x).sum();
        assert!((q - 2.0 / 3.0).abs() < 1e-6);
    }
}
