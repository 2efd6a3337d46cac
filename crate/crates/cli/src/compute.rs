use crate::output::{emit, parse_vec3, read_file, sig15};
use crate::Failure;
use clap::{Args, ValueEnum};
use jastrow::constructions::{c1_closed_form, compute_c1, C1Method};
use jastrow::geometry::{Configuration, Nucleus};
use jastrow::harmonics::{degree_dimension, kernel_dimension};
use jastrow::jastrow::{gamma2, gamma3, Factor, JastrowFactors};

#[derive(Clone, Copy, ValueEnum)]
pub enum Quantity {
    C1,
    #[value(name = "F2", alias = "f2")]
    F2,
    #[value(name = "F3", alias = "f3")]
    F3,
    #[value(name = "Fcut", alias = "fcut")]
    Fcut,
    Gamma2,
    Gamma3,
    HlDimension,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum C1Choice {
    Hylleraas,
    MonteCarlo,
    Quadrature,
    ClosedForm,
}

#[derive(Args)]
pub struct ComputeArgs {
    pub quantity: Quantity,
    /// Configuration JSON with "electrons" and "nuclei".
    #[arg(long)]
    pub config: Option<String>,
    /// First point, or an electron when no --config is given (repeatable).
    #[arg(long, allow_hyphen_values = true)]
    pub x: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Charge of a nucleus at the origin, used with --x.
    #[arg(long = "Z", default_value_t = 1.0)]
    pub charge: f64,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long, value_enum, default_value = "hylleraas")]
    pub method: C1Choice,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

fn configuration(a: &ComputeArgs) -> Result<Configuration, Failure> {
    if let Some(path) = &a.config {
        let c: Configuration = serde_json::from_str(&read_file(path)?).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
        return Ok(Configuration::new(c.electrons, c.nuclei)?);
    }
    if a.x.is_empty() {
        return Err(Failure::usage("give --config or at least one --x electron"));
    }
    let electrons = a.x.iter().map(|s| parse_vec3(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(Configuration::new(electrons, vec![Nucleus { position: [0.0; 3], charge: a.charge }])?)
}

fn point(s: &Option<String>, flag: &str) -> Result<[f64; 3], Failure> {
    parse_vec3(s.as_deref().ok_or_else(|| Failure::usage(format!("missing --{flag}")))?)
}

fn factor_value(a: &ComputeArgs, factor: Factor) -> Result<f64, Failure> {
    let cfg = configuration(a)?;
    cfg.check_nonsingular()?;
    Ok(JastrowFactors::for_config(&cfg).value(&cfg.electrons, factor)?)
}

/// Value, optional error estimate and a description of the formula.
pub fn evaluate(a: &ComputeArgs) -> Result<(f64, Option<f64>, &'static str), Failure> {
    Ok(match a.quantity {
        Quantity::C1 => match a.method {
            C1Choice::ClosedForm => (c1_closed_form(), None, "c1 = 16(2-π)/(3π)"),
            C1Choice::Hylleraas => {
                let e = compute_c1(C1Method::Hylleraas { tol: a.tol })?;
                (e.value, Some(e.error), "c1 = 0.8 I_A/I_B, triple integrals over 0<s<1, 0<t<√(1-s²), |s-t|<r<s+t")
            }
            C1Choice::MonteCarlo => {
                let e = compute_c1(C1Method::MonteCarlo { samples: a.samples, seed: a.seed })?;
                (e.value, Some(e.error), "c1 = ⟨γ2, x·y⟩/‖x·y‖² on S^5 by uniform sampling")
            }
            C1Choice::Quadrature => {
                let e = compute_c1(C1Method::Quadrature { order: 24 })?;
                (e.value, None, "c1 = ⟨γ2, x·y⟩/‖x·y‖² on S^5 by the reduced invariant quadrature")
            }
        },
        Quantity::F2 => (factor_value(a, Factor::F2)?, None, "F2 = -(1/2) Σ_j Σ_k Z_k |x_j - X_k| + (1/4) Σ_{i<j} |x_i - x_j|"),
        Quantity::F3 => (
            factor_value(a, Factor::F3)?,
            None,
            "F3 = C0 Σ_k Z_k Σ_{i<j} (y_i·y_j) ln(|y_i|² + |y_j|²), y = x - X_k, C0 = (2-π)/(12π)",
        ),
        Quantity::Fcut => (factor_value(a, Factor::Cut)?, None, "F_cut: F2 + F3 with each term multiplied by the smooth cutoff χ"),
        Quantity::Gamma2 => {
            let x = point(&a.x.first().cloned(), "x")?;
            (gamma2(&x, &point(&a.y, "y")?)?, None, "γ2(x, y) = (x/|x| - y/|y|)·(x - y)/|x - y|")
        }
        Quantity::Gamma3 => {
            let x = point(&a.x.first().cloned(), "x")?;
            (gamma3(&x, &point(&a.y, "y")?, &point(&a.z, "z")?)?, None, "γ3(x, y, z) = sum of the cosines of the triangle x, y, z")
        }
        Quantity::HlDimension => {
            let n = a.n.ok_or_else(|| Failure::usage("missing --n"))?;
            let l = a.l.ok_or_else(|| Failure::usage("missing --l"))?;
            if n < 2 {
                return Err(Failure::usage("--n must be at least 2"));
            }
            let h = degree_dimension(n, l as usize);
            if n <= 9 && l <= 6 && kernel_dimension(n, l)? as u64 != h {
                return Err(Failure { code: crate::EXIT_FAIL, message: "kernel dimension disagrees with the formula".into() });
            }
            (h as f64, None, "h(l) = C(n+l-1, l) - C(n+l-3, l-2), the dimension of degree-l harmonics in n variables")
        }
    })
}

pub fn run(a: ComputeArgs) -> Result<u8, Failure> {
    let (v, err, formula) = evaluate(&a)?;
    let mut text = match a.quantity {
        Quantity::HlDimension => format!("{}\n", v as u64),
        _ => format!("{}\n", sig15(v)),
    };
    if let Some(e) = err {
        text += &format!("error estimate: {}\n", sig15(e));
    }
    text += &format!("formula: {formula}\n");
    emit(&text);
    Ok(0)
}
