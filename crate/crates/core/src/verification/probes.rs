//! Difference-quotient probes for C^{1,1} and Hölder statements, and the cap
//! measure on spheres.
use super::report::{linear_fit, CheckKind, CheckReport, Expected, RadiusSweep};
use crate::geometry::points::ball_points;
use crate::geometry::sampling::sphere_monte_carlo;
use crate::geometry::sphere::sphere_area;

/// (f(x + h v) - 2 f(x) + f(x - h v)) / h².
pub fn second_difference(f: &dyn Fn(&[f64]) -> f64, x: &[f64], v: &[f64], h: f64) -> f64 {
    let p: Vec<f64> = x.iter().zip(v).map(|(a, b)| a + h * b).collect();
    let m: Vec<f64> = x.iter().zip(v).map(|(a, b)| a - h * b).collect();
    (f(&p) - 2.0 * f(x) + f(&m)) / (h * h)
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub const STEPS: [f64; 4] = [1e-2, 1e-3, 1e-4, 1e-5];

/// max |D²_h f(x)| over x in a ball of radius 3h around the origin, plus
/// points near `anchors`, and the 3 coordinate directions.
fn max_second_difference(f: &dyn Fn(&[f64]) -> f64, h: f64, anchors: &[[f64; 3]]) -> f64 {
    let mut pts = ball_points(&[0.0; 3], 3.0 * h, 64);
    pts.push(vec![0.0; 3]);
    for a in anchors {
        for q in ball_points(a, h, 8) {
            pts.push(q);
        }
    }
    let dirs = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mut worst: f64 = 0.0;
    for p in &pts {
        for v in &dirs {
            worst = worst.max(second_difference(f, p, v, h).abs());
        }
    }
    worst
}

/// The later steps stay within a factor 2 of the coarsest one.
fn bounded(values: &[f64]) -> bool {
    values.iter().all(|v| v.is_finite() && *v <= 2.0 * values[0].max(f64::MIN_POSITIVE))
}

/// ∂11 along e1 minus ∂11 along e2, from second differences at 2h e1 and 2h e2.
fn axis_gap(f: &dyn Fn(&[f64]) -> f64, h: f64) -> f64 {
    let e1 = [1.0, 0.0, 0.0];
    let a = second_difference(f, &[2.0 * h, 0.0, 0.0], &e1, h);
    let b = second_difference(f, &[0.0, 2.0 * h, 0.0], &e1, h);
    a - b
}

fn optimality(id: &str, desc: &str, f: &dyn Fn(&[f64]) -> f64, expected_gap: f64) -> CheckReport {
    let sups: Vec<f64> = STEPS.iter().map(|&h| max_second_difference(f, h, &[])).collect();
    let gap = axis_gap(f, *STEPS.last().unwrap());
    let met = (gap - expected_gap).abs() <= 0.1 * expected_gap && bounded(&sups);
    CheckReport::new(id, CheckKind::Positive, desc, Expected::Oracle)
        .value("gap", gap)
        .value("max_second_difference", sups.iter().copied().fold(0.0, f64::max))
        .expect(expected_gap, 0.1 * expected_gap)
        .met(met)
        .with_sweep(RadiusSweep::new(STEPS.to_vec(), sups))
}

/// f = x1 e^{(Z/4)|x|}: the limits of ∂11 f along e1 and e2 differ by Z/2,
/// while second differences stay bounded.
pub fn check_optimality_probe(z: f64) -> CheckReport {
    let a = z / 4.0;
    let f = move |x: &[f64]| x[0] * (a * norm(x)).exp();
    optimality(
        &format!("optimality.z{z}"),
        "x1 e^{(Z/4)|x|}: ∂11 gap between axes e1 and e2 equals Z/2 within 10%; second differences bounded over h in [1e-5, 1e-2]",
        &f,
        z / 2.0,
    )
}

/// f = x1 |x| has the same kind of gap, equal to 2.
pub fn check_optimality_control() -> CheckReport {
    let f = |x: &[f64]| x[0] * norm(x);
    optimality("optimality.x1r", "x1 |x|: ∂11 gap between axes equals 2 within 10%", &f, 2.0)
}

/// f = r² G(x/r) on R^3; second differences across the origin stay bounded
/// by `bound`.
pub fn check_r2g(id: &str, kind: CheckKind, desc: &str, g: &dyn Fn(&[f64]) -> f64, bound: f64) -> CheckReport {
    let f = |x: &[f64]| {
        let r = norm(x);
        if r == 0.0 {
            return 0.0;
        }
        let u: Vec<f64> = x.iter().map(|v| v / r).collect();
        r * r * g(&u)
    };
    let anchors = [[0.0, 0.5, 0.2], [0.0, -0.3, 0.6], [1e-3, 0.4, -0.4]];
    let sups: Vec<f64> = STEPS.iter().map(|&h| max_second_difference(&f, h, &anchors)).collect();
    let worst = sups.iter().copied().fold(0.0, f64::max);
    CheckReport::new(id, kind, desc, Expected::Bound)
        .value("max_second_difference", worst)
        .expect(0.0, bound)
        .met(worst <= bound && bounded(&sups))
        .with_sweep(RadiusSweep::new(STEPS.to_vec(), sups))
}

pub fn check_r2g_suite() -> Vec<CheckReport> {
    let sign = |u: &[f64]| if u[0] >= 0.0 { 1.0 } else { -1.0 };
    vec![
        check_r2g("r2g.y1", CheckKind::Positive, "r² Y1 = r x1 on R^3: second differences <= 4", &|u| u[0], 4.0),
        check_r2g("r2g.constant", CheckKind::Positive, "r² on R^3: second differences equal 2 up to round-off", &|_| 1.0, 2.0 + 1e-4),
        check_r2g("r2g.sign", CheckKind::NegativeControl, "r² sign(x1): discontinuous G", &sign, 4.0),
    ]
}

/// Sample cloud in the unit ball of R^6 with copies scaled towards 0.
fn holder_cloud() -> Vec<Vec<f64>> {
    let mut pts = Vec::new();
    for s in [1.0, 1e-1, 1e-2, 1e-3, 1e-4] {
        pts.extend(ball_points(&[0.0; 6], s, 80));
    }
    pts
}

/// sup |h| + sup |h(p) - h(q)| / |p - q|^α over the cloud.
fn holder_norm(h: &dyn Fn(&[f64]) -> Vec<f64>, pts: &[Vec<f64>], alpha: f64) -> f64 {
    let vals: Vec<Vec<f64>> = pts.iter().map(|p| h(p)).collect();
    let sup = vals.iter().map(|v| norm(v)).fold(0.0, f64::max);
    let mut semi: f64 = 0.0;
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            let d: Vec<f64> = pts[a].iter().zip(&pts[b]).map(|(x, y)| x - y).collect();
            let dv: Vec<f64> = vals[a].iter().zip(&vals[b]).map(|(x, y)| x - y).collect();
            semi = semi.max(norm(&dv) / norm(&d).powf(alpha));
        }
    }
    sup + semi
}

/// f = (x/|x|)·G(x, y) on R^3 x R^3 with G(0, y) = 0; the sampled C^α norm
/// of f is at most twice that of G.
pub fn check_xdotg(id: &str, kind: CheckKind, desc: &str, g: &dyn Fn(&[f64]) -> [f64; 3], alpha: f64) -> CheckReport {
    let pts = holder_cloud();
    let f = |p: &[f64]| {
        let r = norm(&p[..3]);
        let gv = g(p);
        let dot = if r == 0.0 { 0.0 } else { (p[0] * gv[0] + p[1] * gv[1] + p[2] * gv[2]) / r };
        vec![dot]
    };
    let gf = |p: &[f64]| g(p).to_vec();
    let nf = holder_norm(&f, &pts, alpha);
    let ng = holder_norm(&gf, &pts, alpha);
    CheckReport::new(id, kind, desc, Expected::Bound)
        .value("ratio", nf / ng)
        .value("norm_f", nf)
        .value("norm_g", ng)
        .expect(0.0, 2.0)
        .met(nf <= 2.0 * ng)
}

pub fn check_xdotg_suite() -> Vec<CheckReport> {
    let alpha = 0.5;
    vec![
        check_xdotg("xdotg.identity", CheckKind::Positive, "G(x, y) = x, f = |x|: ratio <= 2", &|p| [p[0], p[1], p[2]], alpha),
        check_xdotg(
            "xdotg.difference",
            CheckKind::Positive,
            "G(x, y) = (x1 - x2)(1, -1, |y|): ratio <= 2",
            &|p| {
                let d = p[0] - p[1];
                [d, -d, d * norm(&p[3..])]
            },
            alpha,
        ),
        check_xdotg("xdotg.constant", CheckKind::NegativeControl, "G = e1 violates G(0, y) = 0", &|_| [1.0, 0.0, 0.0], alpha),
    ]
}

/// Monte Carlo measure of {ω ∈ S^{n-1} : |ω'| <= s^{-1/2}}, ω' the first k
/// coordinates; returns (mean, standard error).
pub fn cap_measure(n: usize, k: usize, s: f64, samples: usize, seed: u64) -> (f64, f64) {
    let t = 1.0 / s;
    let est = sphere_monte_carlo(n, samples, seed, 1, |w, out| {
        let r2: f64 = w[..k].iter().map(|v| v * v).sum();
        out[0] = if r2 <= t { 1.0 } else { 0.0 };
    });
    let a = sphere_area(n);
    (a * est.mean[0], a * est.std_error(0))
}

/// |Σ(s)| √s bounded over s ∈ {4, 16, 64, 256} on S^5 with k = 3, plus the
/// exact values at s = 2 (half the sphere) and s = 4.
pub fn check_cap_measure(samples: usize, seed: u64) -> Vec<CheckReport> {
    let (n, k) = (6, 3);
    let ss = [4.0, 16.0, 64.0, 256.0];
    let mut meas = Vec::new();
    let mut scaled = Vec::new();
    for (i, &s) in ss.iter().enumerate() {
        let (m, _) = cap_measure(n, k, s, samples, seed.wrapping_add(i as u64));
        meas.push(m);
        scaled.push(m * s.sqrt());
    }
    let monotone = meas.windows(2).all(|w| w[1] < w[0]);
    let inv: Vec<f64> = ss.iter().map(|s| 1.0 / s).collect();
    let bounded = scaled.iter().all(|v| *v <= 2.0 * scaled[0]);
    let mut out = vec![CheckReport::new(
        "cap.bound",
        CheckKind::Positive,
        "S^5, k = 3: |Σ(s)| s^{1/2} stays within 2x of its s = 4 value and |Σ(s)| decreases",
        Expected::Bound,
    )
    .value("max_ratio", scaled.iter().copied().fold(0.0, f64::max) / scaled[0])
    .value("log_slope", linear_fit(&inv.iter().map(|v| v.ln()).collect::<Vec<_>>(), &meas.iter().map(|v| v.ln()).collect::<Vec<_>>()).0)
    .expect(1.0, 1.0)
    .seeded(seed, samples as u64)
    .met(bounded && monotone)
    .with_sweep(RadiusSweep::new(inv, scaled))];
    // |ω'|² is Beta(3/2, 3/2) distributed on S^5
    for (s, exact, id) in [(2.0, std::f64::consts::PI.powi(3) / 2.0, "cap.half"), (4.0, 6.061_761_491_776_899, "cap.quarter")] {
        let sd = seed.wrapping_add(100 + s as u64);
        let (m, se) = cap_measure(n, k, s, samples, sd);
        out.push(
            CheckReport::new(id, CheckKind::Positive, "Monte Carlo cap measure against the Beta closed form, 3σ", Expected::Statistical)
                .value("measure", m)
                .value("std_error", se)
                .expect(exact, 3.0 * se)
                .seeded(sd, samples as u64)
                .met_by_tolerance(),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optimality_gap() {
        let r = check_optimality_probe(1.0);
        assert!(r.ok(), "{r:?}");
        assert!((r.get("gap").unwrap() - 0.5).abs() < 0.01);
        assert!(check_optimality_control().ok());
    }

    #[test]
    fn r2g_probes() {
        for r in check_r2g_suite() {
            assert!(r.ok(), "{r:?}");
        }
    }

    #[test]
    fn xdotg_probes() {
        for r in check_xdotg_suite() {
            assert!(r.ok(), "{r:?}");
        }
    }

    #[test]
    fn cap_measures() {
        for r in check_cap_measure(200_000, 4) {
            assert!(r.ok(), "{r:?}");
        }
    }
}
