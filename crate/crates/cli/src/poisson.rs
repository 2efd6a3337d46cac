use crate::output::{emit, sig15, write_file};
use std::fmt::Write;
use crate::{Failure, EXIT_DOMAIN};
use clap::{Args, ValueEnum};
use jastrow::constructions::{gamma2_hat, gamma3_bar, generic_points};
use jastrow::geometry::{fd_laplacian, FdScheme};
use jastrow::harmonics::{parse_polynomial, project_monte_carlo, project_polynomial, HarmonicBasis, Polynomial, Projection, Projector};
use jastrow::poisson::{resonance_coefficient, solve_homogeneous, HomogeneousSolution, ResonanceGate, Source};
use jastrow::{Error, FnField};
use serde_json::json;

#[derive(Clone, Copy, ValueEnum)]
pub enum ProjectorChoice {
    /// Exact monomial moments (polynomial sources).
    Exact,
    MonteCarlo,
    /// Reduced quadrature on the diagonal-SO(3) invariant harmonics of S^5.
    Invariant,
}

#[derive(Args)]
pub struct PoissonArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// gamma2hat, gamma3bar, xy-over-r2, Y1, or a polynomial in x1..xn.
    #[arg(long = "G")]
    pub source: String,
    #[arg(long, default_value_t = 8)]
    pub lmax: u32,
    /// Defaults to exact for polynomials and invariant for gamma2hat, gamma3bar.
    #[arg(long, value_enum)]
    pub projector: Option<ProjectorChoice>,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Save the coefficient table as JSON.
    #[arg(long)]
    pub output: Option<String>,
}

enum Named {
    Polynomial(Polynomial<f64>),
    Function(fn(&[f64]) -> f64),
}

fn xy(n: usize) -> Polynomial<f64> {
    (0..3).fold(Polynomial::zero(n), |acc, i| acc.add(&Polynomial::var(n, i).mul(&Polynomial::var(n, 3 + i))))
}

/// On the sphere x·y/(x²+y²) is the polynomial x·y.
fn resolve(a: &PoissonArgs) -> Result<Named, Failure> {
    let needs6 = |name: &str| {
        if a.n != 6 {
            Err(Failure::usage(format!("{name} is defined on S^5, use --n 6")))
        } else {
            Ok(())
        }
    };
    Ok(match a.source.as_str() {
        "gamma2hat" => {
            needs6("gamma2hat")?;
            Named::Function(gamma2_hat)
        }
        "gamma3bar" => {
            needs6("gamma3bar")?;
            Named::Function(gamma3_bar)
        }
        "xy-over-r2" => {
            needs6("xy-over-r2")?;
            Named::Polynomial(xy(6))
        }
        "Y1" => Named::Polynomial(Polynomial::var(a.n, 0)),
        src => Named::Polynomial(parse_polynomial(src, a.n)?),
    })
}

fn projector(a: &PoissonArgs, named: &Named) -> Projector {
    let choice = a.projector.unwrap_or(match named {
        Named::Polynomial(_) => ProjectorChoice::Exact,
        Named::Function(_) => ProjectorChoice::Invariant,
    });
    match choice {
        ProjectorChoice::Exact => Projector::ExactMoments,
        ProjectorChoice::MonteCarlo => Projector::MonteCarlo { samples: a.samples, seed: a.seed },
        ProjectorChoice::Invariant => Projector::InvariantQuadrature { order: 24 },
    }
}

/// RMS relative FD residual of Δu against r^k (truncated G) at 10 points.
fn residual(sol: &HomogeneousSolution, seed: u64) -> Result<f64, Error> {
    let n = sol.n;
    let norm = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let pts = generic_points(n, 10, 0.3, seed, norm);
    let field = FnField::new(n, |x: &[f64]| sol.eval(x)).with_singular(norm);
    let scheme = FdScheme::fixed(1e-3, 1);
    let (mut num, mut den) = (0.0, 0.0);
    for p in &pts {
        let t = sol.truncated_source(p);
        num += (fd_laplacian(&field, p, &scheme)? - t).powi(2);
        den += t * t;
    }
    Ok(if den == 0.0 { num.sqrt() } else { (num / den).sqrt() })
}

fn print_rejection(out: &mut String, a: &PoissonArgs, named: &Named, err: &Error) -> Result<(), Failure> {
    let deg = (a.k + 2) as u32;
    let _ = writeln!(out, "rejected: {err}");
    let _ = writeln!(out, "degree {deg} is resonant: b_{deg}({}, {}) = 0", a.n, a.k);
    let basis = HarmonicBasis::full(a.n, deg)?;
    let pr: Projection = match named {
        Named::Polynomial(p) => project_polynomial(p, &basis),
        Named::Function(f) => project_monte_carlo(f, &basis, a.samples, a.seed),
    };
    let _ = writeln!(out, "{:>4} {:>22} {:>12}", "m", "coefficient", "z");
    for (m, c) in pr.coefficients.iter().enumerate() {
        let z = pr.std_errors.as_ref().map(|s| sig15(c / s[m])).unwrap_or_else(|| "-".into());
        if c.abs() > 1e-12 || pr.std_errors.is_some() {
            let _ = writeln!(out, "{m:>4} {:>22} {z:>12}", sig15(*c));
        }
    }
    Ok(())
}

pub fn run(a: PoissonArgs) -> Result<u8, Failure> {
    let named = resolve(&a)?;
    let mut out = String::new();
    let proj = projector(&a, &named);
    let source = match &named {
        Named::Polynomial(p) => Source::Polynomial(p.clone()),
        Named::Function(f) => Source::Function(f),
    };
    let sol = match solve_homogeneous(a.n, a.k, source, a.lmax, proj, ResonanceGate::default()) {
        Ok(s) => s,
        Err(e @ Error::Resonance { .. }) => {
            print_rejection(&mut out, &a, &named, &e)?;
            emit(&out);
            return Ok(EXIT_DOMAIN);
        }
        Err(e) => return Err(e.into()),
    };
    let _ = writeln!(out, "u = r^{} Σ_l Σ_m (g_lm / b_l) Y_lm, n = {}, k = {}, lmax = {}", a.k + 2, a.n, a.k, a.lmax);
    let _ = writeln!(out, "{:>3} {:>6} {:>4} {:>22} {:>22}", "l", "b_l", "m", "g_lm", "u_lm");
    let mut rows = Vec::new();
    for t in &sol.terms {
        debug_assert_eq!(t.divisor, resonance_coefficient(a.n, a.k, t.degree as usize));
        for (m, g) in t.projection.coefficients.iter().enumerate() {
            if g.abs() < 1e-12 {
                continue;
            }
            let u = g / t.divisor as f64;
            let _ = writeln!(out, "{:>3} {:>6} {m:>4} {:>22} {:>22}", t.degree, t.divisor, sig15(*g), sig15(u));
            rows.push(json!({ "l": t.degree, "b_l": t.divisor, "m": m, "g": g, "u": u }));
        }
    }
    let res = residual(&sol, a.seed)?;
    let _ = writeln!(out, "residual (RMS relative, FD Δu against r^k G_trunc at 10 points): {}", sig15(res));
    emit(&out);
    if let Some(path) = &a.output {
        let doc = json!({ "n": a.n, "k": a.k, "lmax": a.lmax, "source": a.source, "coefficients": rows, "residual": res });
        write_file(path, &(serde_json::to_string_pretty(&doc).expect("json") + "\n"))?;
    }
    Ok(0)
}
