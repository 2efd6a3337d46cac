//! Deterministic low-discrepancy point clouds.

const PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Radical inverse of `index` in `base`.
pub fn halton(mut index: u64, base: u32) -> f64 {
    let b = base as f64;
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= b;
        r += f * (index % base as u64) as f64;
        index /= base as u64;
    }
    r
}

/// `count` Halton points of the unit ball in R^d, centre excluded.
pub fn unit_ball_points(d: usize, count: usize) -> Vec<Vec<f64>> {
    assert!(d <= PRIMES.len(), "dimension too large for the Halton table");
    let mut out = Vec::with_capacity(count);
    let mut i = 1u64;
    while out.len() < count {
        let p: Vec<f64> = (0..d).map(|k| 2.0 * halton(i, PRIMES[k]) - 1.0).collect();
        let r2: f64 = p.iter().map(|v| v * v).sum();
        if r2 < 1.0 && r2 > 0.0 {
            out.push(p);
        }
        i += 1;
    }
    out
}

/// The unit cloud scaled by `radius` around `center`.
pub fn ball_points(center: &[f64], radius: f64, count: usize) -> Vec<Vec<f64>> {
    unit_ball_points(center.len(), count)
        .into_iter()
        .map(|p| p.iter().zip(center).map(|(v, c)| c + radius * v).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radical_inverse() {
        assert_eq!(halton(1, 2), 0.5);
        assert_eq!(halton(3, 2), 0.75);
        assert!((halton(5, 3) - (2.0 / 3.0 + 1.0 / 9.0)).abs() < 1e-15);
    }

    #[test]
    fn ball_cloud_stays_inside() {
        let pts = ball_points(&[1.0, 0.0, 0.0], 0.1, 500);
        assert_eq!(pts.len(), 500);
        for p in pts {
            let r2 = (p[0] - 1.0).powi(2) + p[1] * p[1] + p[2] * p[2];
            assert!(r2 < 0.01);
        }
    }
}
