//! Deterministic parallel Monte Carlo on spheres and balls.
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// Samples drawn per independent stream.
pub const BATCH: usize = 1 << 14;

/// Mean vector and sample covariance of a vector valued estimator.
#[derive(Debug, Clone)]
pub struct McEstimate {
    pub samples: usize,
    pub mean: Vec<f64>,
    /// Row-major covariance of a single draw.
    pub cov: Vec<f64>,
}

impl McEstimate {
    pub fn len(&self) -> usize {
        self.mean.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mean.is_empty()
    }

    pub fn std_error(&self, i: usize) -> f64 {
        (self.cov[i * self.len() + i] / self.samples as f64).sqrt()
    }

    /// Covariance of the estimated means i and j.
    pub fn mean_cov(&self, i: usize, j: usize) -> f64 {
        self.cov[i * self.len() + j] / self.samples as f64
    }
}

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform point on S^{n-1}.
pub fn sample_sphere<R: Rng>(rng: &mut R, out: &mut [f64]) {
    loop {
        let mut r2 = 0.0;
        for v in out.iter_mut() {
            *v = rng.sample(StandardNormal);
            r2 += *v * *v;
        }
        if r2 > 1e-300 {
            let inv = 1.0 / r2.sqrt();
            out.iter_mut().for_each(|v| *v *= inv);
            return;
        }
    }
}

/// Monte Carlo over `samples` draws of `draw`, accumulating k outputs of `f`.
///
/// Each batch owns its own ChaCha stream and batches are reduced in index
/// order, so the result depends only on the seed.
pub fn monte_carlo<D, F>(dim: usize, samples: usize, seed: u64, k: usize, draw: D, f: F) -> McEstimate
where
    D: Fn(&mut ChaCha8Rng, &mut [f64]) + Sync,
    F: Fn(&[f64], &mut [f64]) + Sync,
{
    assert!(samples > 1, "need at least two samples");
    let nbatch = samples.div_ceil(BATCH);
    let partial: Vec<(Vec<f64>, Vec<f64>)> = (0..nbatch)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream_rng(seed, b as u64);
            let count = BATCH.min(samples - b * BATCH);
            let mut x = vec![0.0; dim];
            let mut v = vec![0.0; k];
            let mut s = vec![0.0; k];
            let mut ss = vec![0.0; k * k];
            for _ in 0..count {
                draw(&mut rng, &mut x);
                v.iter_mut().for_each(|e| *e = 0.0);
                f(&x, &mut v);
                for i in 0..k {
                    s[i] += v[i];
                    for j in 0..=i {
                        ss[i * k + j] += v[i] * v[j];
                    }
                }
            }
            (s, ss)
        })
        .collect();
    let mut s = vec![0.0; k];
    let mut ss = vec![0.0; k * k];
    for (ps, pss) in &partial {
        s.iter_mut().zip(ps).for_each(|(a, b)| *a += b);
        ss.iter_mut().zip(pss).for_each(|(a, b)| *a += b);
    }
    let m = samples as f64;
    let mean: Vec<f64> = s.iter().map(|v| v / m).collect();
    let mut cov = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..=i {
            let mut c = (ss[i * k + j] - m * mean[i] * mean[j]) / (m - 1.0);
            if i == j {
                c = c.max(0.0);
            }
            cov[i * k + j] = c;
            cov[j * k + i] = c;
        }
    }
    McEstimate { samples, mean, cov }
}

/// Monte Carlo with uniform draws on S^{n-1}.
pub fn sphere_monte_carlo<F>(n: usize, samples: usize, seed: u64, k: usize, f: F) -> McEstimate
where
    F: Fn(&[f64], &mut [f64]) + Sync,
{
    monte_carlo(n, samples, seed, k, |rng, x| sample_sphere(rng, x), f)
}

/// Seeded reproducible point source on S^{n-1}.
#[derive(Debug, Clone)]
pub struct SphereSampler {
    pub n: usize,
    pub seed: u64,
}

impl SphereSampler {
    pub fn new(n: usize, seed: u64) -> Self {
        SphereSampler { n, seed }
    }

    pub fn points(&self, count: usize) -> Vec<Vec<f64>> {
        let mut rng = stream_rng(self.seed, 0);
        (0..count)
            .map(|_| {
                let mut p = vec![0.0; self.n];
                sample_sphere(&mut rng, &mut p);
                p
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_under_any_schedule() {
        let f = |x: &[f64], out: &mut [f64]| {
            out[0] = x[0] * x[0];
            out[1] = x[0] * x[1];
        };
        let a = sphere_monte_carlo(4, 100_000, 7, 2, f);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| sphere_monte_carlo(4, 100_000, 7, 2, f));
        assert_eq!(a.mean, b.mean);
        assert_eq!(a.cov, b.cov);
    }

    #[test]
    fn second_moment_on_sphere() {
        let est = sphere_monte_carlo(6, 200_000, 1, 1, |x, out| out[0] = x[2] * x[2]);
        let z = (est.mean[0] - 1.0 / 6.0) / est.std_error(0);
        assert!(z.abs() < 4.0, "z = {z}");
    }

    #[test]
    fn sampler_points_are_unit() {
        for p in SphereSampler::new(9, 3).points(50) {
            let r: f64 = p.iter().map(|v| v * v).sum();
            assert!((r - 1.0).abs() < 1e-14);
        }
    }
}
