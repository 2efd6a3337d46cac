//! Run configuration, check groups and the JSON suite report.
use crate::constructions::BuildOptions;
use crate::error::{Error, Result};
use crate::geometry::FdScheme;
use crate::jastrow::Factor;
use crate::poisson::{NewtonOptions, ResonanceGate};
use crate::schrodinger::{Hydrogenic, HydrogenicKind};
use crate::verification::{cusp, identities, newton, probes, structural, CheckReport};
use serde::{Deserialize, Serialize};
use std::time::Instant;

pub const SCHEMA_VERSION: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Check groups in run order.
pub const GROUPS: [&str; 15] = [
    "hamiltonian",
    "c1",
    "log-laplacian",
    "resonance",
    "spectral",
    "cusp",
    "limf12",
    "apriori",
    "optimality",
    "extension",
    "newton",
    "structural",
    "cap",
    "holder",
    "r2g",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum C1Route {
    Hylleraas,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub schema: u32,
    pub seed: u64,
    /// Samples for sphere Monte Carlo checks.
    pub mc_samples: usize,
    /// Antithetic direction pairs for Newton potential probes.
    pub newton_pairs: usize,
    pub fd: FdScheme,
    /// Random configurations for ΔF2 = V.
    pub configurations: usize,
    /// Truncation degrees for κ and ν; the last one is the target.
    pub lmax_sweep: Vec<u32>,
    /// Points per panel of the reduced S^5 quadrature.
    pub quadrature_order: usize,
    /// Nuclear charges for the cusp, a priori and optimality checks.
    pub charges: Vec<f64>,
    pub c1_routes: Vec<C1Route>,
    /// Acceptance tolerance of the Hylleraas route.
    pub c1_tol: f64,
    /// Group names, or "all".
    pub select: Vec<String>,
    pub output: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            schema: SCHEMA_VERSION,
            seed: 42,
            mc_samples: 1_000_000,
            newton_pairs: 20_000,
            fd: FdScheme::default(),
            configurations: 100,
            lmax_sweep: vec![4, 6, 8],
            quadrature_order: 24,
            charges: vec![1.0, 2.0],
            c1_routes: vec![C1Route::Hylleraas, C1Route::MonteCarlo],
            c1_tol: 1e-6,
            select: vec!["all".into()],
            output: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!("unsupported config schema {}", self.schema)));
        }
        for s in &self.select {
            if s != "all" && !GROUPS.contains(&s.as_str()) {
                return Err(Error::InvalidInput(format!("unknown check group '{s}'")));
            }
        }
        if self.lmax_sweep.is_empty() || self.charges.is_empty() || self.mc_samples < 2 || self.c1_routes.is_empty() {
            return Err(Error::InvalidInput("lmax_sweep, charges and c1_routes must be nonempty, mc_samples >= 2".into()));
        }
        Ok(())
    }

    pub fn groups(&self) -> Vec<&'static str> {
        GROUPS.iter().copied().filter(|g| self.select.iter().any(|s| s == "all" || s == g)).collect()
    }

    /// Independent seed for each group.
    fn seed_for(&self, group: &str) -> u64 {
        let k = GROUPS.iter().position(|g| *g == group).unwrap_or(GROUPS.len()) as u64;
        self.seed.wrapping_add(1000 * (k + 1))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Runtime {
    pub group: String,
    pub seconds: f64,
}

/// Run-dependent data, kept apart from the body so that bodies diff cleanly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub runtimes: Vec<Runtime>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub negative_controls: usize,
    pub failed_ids: Vec<String>,
}

impl Summary {
    pub fn of(checks: &[CheckReport]) -> Self {
        let failed_ids: Vec<String> = checks.iter().filter(|c| !c.ok()).map(|c| c.id.clone()).collect();
        Summary {
            total: checks.len(),
            passed: checks.len() - failed_ids.len(),
            failed: failed_ids.len(),
            negative_controls: checks.iter().filter(|c| c.kind == crate::verification::CheckKind::NegativeControl).count(),
            failed_ids,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Body {
    pub tool_version: String,
    pub config: RunConfig,
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub header: Header,
    pub body: Body,
}

impl SuiteReport {
    pub fn all_ok(&self) -> bool {
        self.body.summary.failed == 0 && !self.body.checks.is_empty()
    }

    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("report: {e}")))
    }

    pub fn check(&self, id: &str) -> Option<&CheckReport> {
        self.body.checks.iter().find(|c| c.id == id)
    }

    /// Reports whose id starts with `prefix`.
    pub fn matching<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a CheckReport> + 'a {
        self.body.checks.iter().filter(move |c| c.id.starts_with(prefix))
    }
}

pub fn run_group(group: &str, cfg: &RunConfig) -> Result<Vec<CheckReport>> {
    let seed = cfg.seed_for(group);
    let n = cfg.mc_samples;
    let states = |kind| cfg.charges.iter().map(move |&z| Hydrogenic { kind, z });
    Ok(match group {
        "hamiltonian" => vec![identities::check_laplacian_f2(cfg.configurations, seed, &cfg.fd)],
        "c1" => {
            let mut out = Vec::new();
            if cfg.c1_routes.contains(&C1Route::Hylleraas) {
                out.extend(identities::check_c1_hylleraas(cfg.c1_tol));
            }
            if cfg.c1_routes.contains(&C1Route::MonteCarlo) {
                out.push(identities::check_c1_monte_carlo(n, seed));
                out.push(identities::check_degree2_along_xy(n, seed.wrapping_add(1)));
            }
            out
        }
        "log-laplacian" => identities::check_log_laplacian(50, seed),
        "resonance" => identities::check_resonance_gate(n, seed),
        "spectral" => {
            let opt = BuildOptions { samples: n, seed, order: cfg.quadrature_order, gate: ResonanceGate::default() };
            identities::check_spectral_residuals(&cfg.lmax_sweep, &opt)
        }
        "cusp" => {
            let radii = cusp::default_radii();
            let mut out: Vec<_> = cfg.charges.iter().map(|&z| cusp::check_cusp_nuclear(z, &radii)).collect();
            out.push(cusp::check_cusp_gaussian_control(cfg.charges[0], &radii));
            out
        }
        "limf12" => {
            let d = [1e-2, 1e-3, 1e-4];
            vec![
                cusp::check_lim_f12([0.0, 0.0, 1.0], Factor::Cut, &d),
                cusp::check_lim_f12([0.0; 3], Factor::Cut, &d),
                cusp::check_lim_f12([0.0, 0.0, 1.0], Factor::F2, &d),
            ]
        }
        "apriori" => {
            let radii = cusp::default_radii();
            let mut out = Vec::new();
            for psi in states(HydrogenicKind::Ground).take(1).chain(states(HydrogenicKind::Excited).take(1)) {
                for pair in [(0, 0), (0, 1)] {
                    out.push(cusp::check_apriori_boundedness(&psi, pair, &radii));
                }
            }
            out
        }
        "optimality" => {
            let mut out: Vec<_> = cfg.charges.iter().map(|&z| probes::check_optimality_probe(z)).collect();
            out.push(probes::check_optimality_control());
            out
        }
        "extension" => identities::check_extension_orthogonality(n, seed),
        "newton" => {
            let opt = NewtonOptions { pairs: cfg.newton_pairs, seed, ..Default::default() };
            vec![newton::check_newton_bounded(opt), newton::check_newton_log_growth(opt)]
        }
        "structural" => vec![
            structural::check_gamma_invariants(10_000, seed),
            structural::check_transform(seed.wrapping_add(1)),
            structural::check_harmonic_dimensions(&[3, 6, 9], 6),
            structural::check_factor_identities(1000, seed.wrapping_add(2)),
        ],
        "cap" => probes::check_cap_measure(n, seed),
        "holder" => probes::check_xdotg_suite(),
        "r2g" => probes::check_r2g_suite(),
        other => return Err(Error::InvalidInput(format!("unknown check group '{other}'"))),
    })
}

/// Runs the selected groups in the fixed order of [`GROUPS`].
pub fn run(cfg: &RunConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let mut checks = Vec::new();
    let mut runtimes = Vec::new();
    for g in cfg.groups() {
        let t = Instant::now();
        checks.extend(run_group(g, cfg)?);
        runtimes.push(Runtime { group: g.to_string(), seconds: t.elapsed().as_secs_f64() });
    }
    let timestamp = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let summary = Summary::of(&checks);
    Ok(SuiteReport {
        header: Header { timestamp, runtimes },
        body: Body { tool_version: VERSION.to_string(), config: cfg.clone(), checks, summary },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_group_is_rejected() {
        let cfg = RunConfig { select: vec!["nope".into()], ..Default::default() };
        assert!(matches!(run(&cfg), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn config_round_trip() {
        let cfg = RunConfig::default();
        let s = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&s).unwrap(), cfg);
        let partial: RunConfig = serde_json::from_str(r#"{"seed": 7}"#).unwrap();
        assert_eq!(partial.seed, 7);
        assert_eq!(partial.mc_samples, 1_000_000);
    }

    #[test]
    fn small_selection_reloads() {
        let cfg = RunConfig { select: vec!["holder".into(), "r2g".into()], ..Default::default() };
        let rep = run(&cfg).unwrap();
        assert!(rep.all_ok());
        let back = SuiteReport::from_json(&rep.to_json()).unwrap();
        assert_eq!(back.body.summary, rep.body.summary);
        assert_eq!(back.body_json(), rep.body_json());
    }
}
