use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_jastrow-verify"));
    c.env_remove("JASTROW_VERIFY_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn example(name: &str) -> String {
    format!("{}/examples/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn hl_dimension() {
    let o = run(&["compute", "hl-dimension", "--n", "6", "--l", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("20"));
}

#[test]
fn gamma2_antipodal() {
    let o = run(&["compute", "gamma2", "--x", "1,0,0", "--y", "-1,0,0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("2.00000000000000"));
}

#[test]
fn singular_input_is_a_domain_error() {
    let o = run(&["compute", "gamma2", "--x", "1,0,0", "--y", "1,0,0"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["compute", "F2", "--x", "0,0,0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn f3_from_config_matches_library() {
    let path = example("two-electron.json");
    let o = run(&["compute", "F3", "--config", &path]);
    assert!(o.status.success());
    let printed: f64 = stdout(&o).lines().next().unwrap().parse().unwrap();
    let cfg: jastrow::geometry::Configuration = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let lib = jastrow::jastrow::eval_f3(&cfg);
    assert!((printed - lib).abs() <= 1e-14 * lib.abs().max(1.0), "{printed} vs {lib}");
}

#[test]
fn c1_closed_form_and_hylleraas() {
    let o = run(&["compute", "c1"]);
    let v: f64 = stdout(&o).lines().next().unwrap().parse().unwrap();
    assert!((v - -1.938027880706232837).abs() < 1e-12);
    assert!(stdout(&o).contains("formula:"));
}

#[test]
fn poisson_rejects_resonant_source() {
    let o = run(&["poisson", "--n", "6", "--k", "0", "--G", "xy-over-r2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("resonant"));
}

#[test]
fn poisson_single_mode() {
    let o = run(&["poisson", "--n", "3", "--k", "1", "--G", "Y1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let row = out.lines().find(|l| l.trim_start().starts_with("1 ")).expect("degree-1 row");
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cols[1], "10");
    let (g, u): (f64, f64) = (cols[3].parse().unwrap(), cols[4].parse().unwrap());
    assert!((u - g / 10.0).abs() < 1e-15);
}

#[test]
fn poisson_gamma2hat_saves_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let o = run(&["poisson", "--n", "6", "--k", "0", "--G", "gamma2hat", "--lmax", "6", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(!doc["coefficients"].as_array().unwrap().is_empty());
    assert!(doc["residual"].as_f64().unwrap() < 1e-6);
}

#[test]
fn unknown_selector_is_usage_error() {
    assert_eq!(run(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
}

#[test]
fn verify_c1_hylleraas_single_report() {
    let o = run(&["verify", "c1", "--method", "hylleraas", "--tol", "1e-6"]);
    assert!(o.status.success());
    let rep = jastrow::suite::SuiteReport::from_json(&stdout(&o)).unwrap();
    let c = rep.check("c1.hylleraas").unwrap();
    assert!((c.values[0].value - -1.938027880706232837).abs() < 1e-6);
    assert!(rep.check("c1.monte_carlo").is_none());
}

#[test]
fn verify_cusp_with_charge() {
    let o = run(&["verify", "cusp", "--Z", "2"]);
    assert!(o.status.success());
    let rep = jastrow::suite::SuiteReport::from_json(&stdout(&o)).unwrap();
    assert!(rep.body.checks.iter().all(|c| c.id.starts_with("cusp.")));
    assert!(rep.check("cusp.nuclear.z2").is_some());
}

#[test]
fn seed_from_environment_and_flag() {
    let env = bin().args(["verify", "holder", "--body-only"]).env("JASTROW_VERIFY_SEED", "9").output().unwrap();
    let rep: serde_json::Value = serde_json::from_str(&stdout(&env)).unwrap();
    assert_eq!(rep["config"]["seed"], 9);
    let flag = bin().args(["verify", "holder", "--body-only", "--seed", "11"]).env("JASTROW_VERIFY_SEED", "9").output().unwrap();
    let rep: serde_json::Value = serde_json::from_str(&stdout(&flag)).unwrap();
    assert_eq!(rep["config"]["seed"], 11);
    let bad = bin().args(["verify", "holder"]).env("JASTROW_VERIFY_SEED", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn config_file_selection_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = run(&["verify", "--config", &example("quick.json"), "--body-only", "--output", p.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let load = |p: &std::path::Path| {
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        v["config"]["output"] = serde_json::Value::Null;
        v
    };
    let body = load(&a);
    assert_eq!(body, load(&b));
    assert_eq!(body["config"]["seed"], 7);
    assert_eq!(body["summary"]["failed"], 0);
}

#[test]
fn verify_all_exit_code_matches_summary() {
    let o = run(&["verify", "all", "--seed", "42"]);
    let rep = jastrow::suite::SuiteReport::from_json(&stdout(&o)).unwrap();
    let expected = if rep.body.summary.failed == 0 { 0 } else { 1 };
    assert_eq!(o.status.code(), Some(expected));
    assert_eq!(rep.body.summary.total, rep.body.checks.len());
    assert_eq!(rep.body.summary.passed + rep.body.summary.failed, rep.body.summary.total);
}
