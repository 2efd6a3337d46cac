//! The fourteen acceptance criteria, one PASS/FAIL line each.
use jastrow::suite::{run, RunConfig, SuiteReport};
use jastrow::verification::CheckReport;

struct Criterion {
    number: usize,
    title: &'static str,
    prefixes: &'static [&'static str],
    /// (group, limit in seconds)
    runtime: Option<(&'static str, f64)>,
}

const CRITERIA: [Criterion; 13] = [
    Criterion { number: 1, title: "ΔF2 = V at 100 configurations", prefixes: &["hamiltonian."], runtime: Some(("hamiltonian", 10.0)) },
    Criterion { number: 2, title: "c1 by Hylleraas quadrature and S^5 sampling", prefixes: &["c1.hylleraas", "c1.monte_carlo"], runtime: Some(("c1", 60.0)) },
    Criterion { number: 3, title: "I_A = (2-π)/48, I_B = π/320", prefixes: &["c1.integral_"], runtime: Some(("c1", 30.0)) },
    Criterion { number: 4, title: "log-part Laplacian and C0 consistency", prefixes: &["kappa.log_laplacian", "kappa.c0_consistency"], runtime: None },
    Criterion { number: 5, title: "resonance gate", prefixes: &["resonance."], runtime: None },
    Criterion { number: 6, title: "κ and ν spectral residuals", prefixes: &["kappa.residual", "nu.residual"], runtime: Some(("spectral", 300.0)) },
    Criterion { number: 7, title: "nuclear cusp limit with Gaussian control", prefixes: &["cusp.nuclear"], runtime: None },
    Criterion { number: 8, title: "|x1 - x2| ∇1·∇2 F_cut -> -1/2", prefixes: &["limf12."], runtime: None },
    Criterion { number: 9, title: "a priori boundedness for both hydrogenic states", prefixes: &["apriori."], runtime: None },
    Criterion { number: 10, title: "optimality probe", prefixes: &["optimality."], runtime: None },
    Criterion { number: 11, title: "harmonic extension orthogonality", prefixes: &["extension."], runtime: None },
    Criterion { number: 12, title: "Newton potential probes", prefixes: &["newton."], runtime: None },
    Criterion { number: 13, title: "structural invariants", prefixes: &["structural."], runtime: Some(("structural", 60.0)) },
];

fn runtime(report: &SuiteReport, group: &str) -> f64 {
    report.header.runtimes.iter().find(|r| r.group == group).map(|r| r.seconds).unwrap_or(f64::INFINITY)
}

fn describe(c: &CheckReport) -> String {
    let vals: Vec<String> = c.values.iter().take(3).map(|q| format!("{}={:.4e}", q.name, q.value)).collect();
    format!("{}{} [{}]", c.id, if c.ok() { "" } else { " (failed)" }, vals.join(", "))
}

#[test]
fn acceptance() {
    let cfg = RunConfig::default();
    let first = run(&cfg).expect("suite runs");
    let second = run(&cfg).expect("suite runs");
    let mut failed = Vec::new();
    for c in &CRITERIA {
        let checks: Vec<&CheckReport> = first.body.checks.iter().filter(|r| c.prefixes.iter().any(|p| r.id.starts_with(p))).collect();
        let mut ok = !checks.is_empty() && checks.iter().all(|r| r.ok());
        let mut detail: Vec<String> = checks.iter().map(|r| describe(r)).collect();
        if let Some((group, limit)) = c.runtime {
            let t = runtime(&first, group);
            ok &= t < limit;
            detail.push(format!("runtime {t:.1} s < {limit} s"));
        }
        println!("{} criterion {:2}: {}: {}", if ok { "PASS" } else { "FAIL" }, c.number, c.title, detail.join("; "));
        if !ok {
            failed.push(c.number);
        }
    }
    let same = first.body_json() == second.body_json();
    println!("{} criterion 14: byte-identical report bodies for identical seeds", if same { "PASS" } else { "FAIL" });
    if !same {
        failed.push(14);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
