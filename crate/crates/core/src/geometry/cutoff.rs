//! Smooth plateau cutoff, equal to 1 on [0,1] and 0 beyond 2.
use num_traits::Float;

/// Value, first and second derivative of the step S(u) = σ(u)/(σ(u)+σ(1-u)),
/// σ(u) = exp(-1/u).
pub fn smooth_step<T: Float>(u: T) -> (T, T, T) {
    let zero = T::zero();
    let one = T::one();
    let two = one + one;
    if u <= zero {
        return (zero, zero, zero);
    }
    if u >= one {
        return (one, zero, zero);
    }
    let v = one - u;
    let q = one / u - one / v;
    // S = 1/(1+e^q) and S(1-S) = e^q/(1+e^q)^2, evaluated without overflow
    let (s, s1ms) = if q > zero {
        let e = (-q).exp();
        (e / (one + e), e / ((one + e) * (one + e)))
    } else {
        let e = q.exp();
        (one / (one + e), e / ((one + e) * (one + e)))
    };
    let dq = -(one / (u * u)) - one / (v * v);
    let ddq = two / (u * u * u) - two / (v * v * v);
    let ds = -s1ms * dq;
    let dds = -ds * (one - two * s) * dq - s1ms * ddq;
    (s, ds, dds)
}

/// χ(t) = S(2 - |t|) with derivatives in t.
pub fn chi<T: Float>(t: T) -> (T, T, T) {
    let two = T::one() + T::one();
    let (s, ds, dds) = smooth_step(two - t.abs());
    let sign = if t < T::zero() { -T::one() } else { T::one() };
    (s, -sign * ds, dds)
}

pub fn chi_value<T: Float>(t: T) -> T {
    chi(t).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn plateau_and_support() {
        for &t in &[0.0, 0.3, 1.0, -0.7] {
            assert_eq!(chi(t), (1.0, 0.0, 0.0));
        }
        for &t in &[2.0, 2.5, -3.0] {
            assert_eq!(chi(t), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn high_precision_values() {
        assert_eq!(chi_value(1.5), 0.5);
        assert_abs_diff_eq!(chi_value(1.25), 0.935030830871335937872, epsilon = 1e-15);
        assert_abs_diff_eq!(chi_value(1.75), 0.064969169128664062128, epsilon = 1e-15);
        let (_, d1, d2) = chi(1.25);
        assert_abs_diff_eq!(d1, -1.07996757673591300832, epsilon = 1e-13);
        assert_abs_diff_eq!(d2, -9.21690719139642494368, epsilon = 1e-11);
    }

    #[test]
    fn derivatives_match_differences() {
        let h = 1e-5;
        for i in 1..40 {
            let t = 1.0 + i as f64 / 40.0;
            let (_, d1, d2) = chi(t);
            let fd1 = (chi_value(t + h) - chi_value(t - h)) / (2.0 * h);
            let fd2 = (chi_value(t + h) - 2.0 * chi_value(t) + chi_value(t - h)) / (h * h);
            assert!((d1 - fd1).abs() < 1e-7, "t={t}");
            assert!((d2 - fd2).abs() < 1e-3 * (1.0 + d2.abs()), "t={t}");
        }
    }

    #[test]
    fn single_precision() {
        assert_eq!(chi_value(1.5f32), 0.5f32);
        assert!((chi_value(1.25f32) - 0.93503083).abs() < 1e-6);
    }
}
