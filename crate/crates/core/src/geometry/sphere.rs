//! Surface measures and monomial moments on the unit sphere S^{n-1}.
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::f64::consts::PI;

/// Largest argument 2x for which Γ(x) is finite in f64.
const GAMMA_HALF_LIMIT: u32 = 340;

/// Γ(m/2) for a positive integer m.
pub fn gamma_half(m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidInput("gamma pole at 0".into()));
    }
    if m > GAMMA_HALF_LIMIT {
        return Err(Error::Overflow(format!("Gamma({m}/2)")));
    }
    let (mut g, mut x) = if m % 2 == 0 { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    while 2.0 * x < m as f64 {
        g *= x;
        x += 1.0;
    }
    Ok(g)
}

/// |S^{n-1}| = 2 π^{n/2} / Γ(n/2).
pub fn sphere_area(n: usize) -> f64 {
    2.0 * PI.powf(n as f64 / 2.0) / gamma_half(n as u32).expect("dimension in range")
}

/// ∫_{S^{n-1}} x^α dσ = 2 ∏Γ((α_i+1)/2) / Γ((|α|+n)/2), zero if some α_i is odd.
pub fn sphere_monomial_moment(alpha: &[u32]) -> Result<f64> {
    if alpha.is_empty() {
        return Err(Error::InvalidInput("empty exponent".into()));
    }
    if alpha.iter().any(|a| a % 2 == 1) {
        return Ok(0.0);
    }
    let total: u32 = alpha.iter().sum::<u32>() + alpha.len() as u32;
    let denom = gamma_half(total)?;
    let mut num = 2.0;
    for &a in alpha {
        num *= gamma_half(a + 1)?;
    }
    Ok(num / denom)
}

/// Average of x^α over the sphere as an exact rational,
/// ∏(α_i-1)!! / (n(n+2)...(n+|α|-2)).
pub fn normalized_moment_exact(alpha: &[u32]) -> BigRational {
    if alpha.iter().any(|a| a % 2 == 1) {
        return BigRational::from_integer(BigInt::from(0));
    }
    let n = alpha.len() as u64;
    let mut num = BigInt::one();
    for &a in alpha {
        num *= double_factorial(a as i64 - 1);
    }
    let half: u64 = alpha.iter().map(|&a| a as u64).sum::<u64>() / 2;
    let mut den = BigInt::one();
    for j in 0..half {
        den *= BigInt::from(n + 2 * j);
    }
    BigRational::new(num, den)
}

/// Same average in f64, computed from the rational formula factor by factor.
pub fn normalized_moment(alpha: &[u32]) -> f64 {
    if alpha.iter().any(|a| a % 2 == 1) {
        return 0.0;
    }
    let n = alpha.len() as f64;
    let mut numer: Vec<f64> = Vec::new();
    for &a in alpha {
        let mut k = a as i64 - 1;
        while k > 1 {
            numer.push(k as f64);
            k -= 2;
        }
    }
    let half: u32 = alpha.iter().sum::<u32>() / 2;
    let mut v = 1.0;
    for j in 0..half as usize {
        v /= n + 2.0 * j as f64;
        if let Some(f) = numer.get(j) {
            v *= f;
        }
    }
    for f in numer.iter().skip(half as usize) {
        v *= f;
    }
    v
}

pub fn double_factorial(k: i64) -> BigInt {
    let mut r = BigInt::one();
    let mut k = k;
    while k > 1 {
        r *= BigInt::from(k);
        k -= 2;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_traits::ToPrimitive;

    #[test]
    fn areas() {
        assert_relative_eq!(sphere_area(2), 2.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(sphere_area(3), 4.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(sphere_area(6), PI.powi(3), max_relative = 1e-15);
        assert_relative_eq!(sphere_area(9), 32.0 * PI.powi(4) / 105.0, max_relative = 1e-14);
    }

    #[test]
    fn known_moments() {
        assert_relative_eq!(sphere_monomial_moment(&[0, 0, 0]).unwrap(), 4.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(sphere_monomial_moment(&[2, 0, 0]).unwrap(), 4.0 * PI / 3.0, max_relative = 1e-15);
        assert_relative_eq!(sphere_monomial_moment(&[2, 2, 0]).unwrap(), 4.0 * PI / 15.0, max_relative = 1e-15);
        assert_eq!(sphere_monomial_moment(&[1, 2, 0]).unwrap(), 0.0);
        // ∫_{S^5} x1^2 y1^2 = π^3/48
        assert_relative_eq!(
            sphere_monomial_moment(&[2, 0, 0, 2, 0, 0]).unwrap(),
            PI.powi(3) / 48.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn exact_and_float_routes_agree() {
        let cases: [&[u32]; 5] = [&[4, 2, 0], &[2, 2, 2, 2, 0, 0], &[6, 0, 2, 0, 0, 0, 0, 0, 4], &[8, 4], &[0; 4]];
        for a in cases {
            let n = a.len();
            let exact = normalized_moment_exact(a).to_f64().unwrap();
            let gamma = sphere_monomial_moment(a).unwrap() / sphere_area(n);
            assert_relative_eq!(exact, gamma, max_relative = 1e-13);
            assert_relative_eq!(exact, normalized_moment(a), max_relative = 1e-14);
        }
    }

    #[test]
    fn overflow_guard() {
        assert!(matches!(sphere_monomial_moment(&[400, 0, 0]), Err(Error::Overflow(_))));
    }
}
