use crate::output::{emit, read_file, write_file};
use crate::{Failure, EXIT_FAIL, SEED_ENV};
use clap::{Args, ValueEnum};
use jastrow::suite::{run as run_suite, C1Route, RunConfig, GROUPS};

#[derive(Clone, Copy, ValueEnum)]
pub enum Method {
    Hylleraas,
    MonteCarlo,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Check groups, or "all"; defaults to the config file's selection.
    pub select: Vec<String>,
    /// JSON run configuration; flags override its values.
    #[arg(long)]
    pub config: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Nuclear charge(s) for the cusp, a priori and optimality checks.
    #[arg(long = "Z", value_delimiter = ',')]
    pub charges: Option<Vec<f64>>,
    /// Route for the c1 group.
    #[arg(long)]
    pub method: Option<Method>,
    /// Acceptance tolerance of the Hylleraas route.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Monte Carlo samples per sphere estimate.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Truncation degrees for κ and ν, e.g. 4,6,8.
    #[arg(long, value_delimiter = ',')]
    pub lmax: Option<Vec<u32>>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<String>,
    /// Print only the deterministic report body.
    #[arg(long)]
    pub body_only: bool,
}

fn env_seed() -> Result<Option<u64>, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| Failure::usage(format!("{SEED_ENV}='{s}' is not an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

/// Built-in defaults, then the environment seed, then the config file, then
/// flags.
pub fn build_config(a: &VerifyArgs) -> Result<RunConfig, Failure> {
    let mut cfg = RunConfig::default();
    if let Some(s) = env_seed()? {
        cfg.seed = s;
    }
    if let Some(path) = &a.config {
        let text = read_file(path)?;
        let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
        let seed = cfg.seed;
        cfg = serde_json::from_value(value.clone()).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
        if value.get("seed").is_none() {
            cfg.seed = seed;
        }
    }
    if a.select.iter().any(|s| s != "all" && !GROUPS.contains(&s.as_str())) {
        return Err(Failure::usage(format!("unknown selector; expected 'all' or one of: {}", GROUPS.join(", "))));
    }
    if !a.select.is_empty() {
        cfg.select = a.select.clone();
    } else if a.config.is_none() {
        return Err(Failure::usage("give a selector ('all' or a group name) or --config"));
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if let Some(z) = &a.charges {
        cfg.charges = z.clone();
    }
    if let Some(m) = a.method {
        cfg.c1_routes = vec![match m {
            Method::Hylleraas => C1Route::Hylleraas,
            Method::MonteCarlo => C1Route::MonteCarlo,
        }];
    }
    if let Some(t) = a.tol {
        cfg.c1_tol = t;
    }
    if let Some(n) = a.samples {
        cfg.mc_samples = n;
    }
    if let Some(l) = &a.lmax {
        cfg.lmax_sweep = l.clone();
    }
    if let Some(o) = &a.output {
        cfg.output = Some(o.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn run(a: VerifyArgs) -> Result<u8, Failure> {
    let cfg = build_config(&a)?;
    let report = run_suite(&cfg)?;
    let text = if a.body_only { report.body_json() } else { report.to_json() };
    match &cfg.output {
        Some(path) => write_file(path, &(text + "\n"))?,
        None => emit(&(text + "\n")),
    }
    let s = &report.body.summary;
    eprintln!("{} of {} checks ok", s.passed, s.total);
    for id in &s.failed_ids {
        eprintln!("failed: {id}");
    }
    Ok(if report.all_ok() { 0 } else { EXIT_FAIL })
}
