use std::process::{Command, Output};

use serde_json::Value;

fn holobreak(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holobreak")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("each line is JSON")).collect()
}

fn without_wall_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_ms");
    v
}

#[test]
fn bernstein_sato_exact_example_passes() {
    let o = holobreak(&["verify", "bernstein-sato", "--n", "3", "--ell-max", "4", "--lambda", "7/2", "--exact"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let recs = lines(&o);
    let summary = recs.last().unwrap();
    assert_eq!(summary["tier"], "exact");
    assert_eq!(summary["failed"], 0);
    assert_eq!(summary["total"], recs.len() - 1);
    let bs: Vec<&Value> = recs.iter().filter(|r| r["identity"] == "juhl.bernstein-sato").collect();
    assert_eq!(bs.len(), 5);
    assert!(bs.iter().all(|r| r["abs_residual"] == 0.0));
}

#[test]
fn rc_identities_example_passes_within_tolerance() {
    let o = holobreak(&["verify", "rc-identities", "--lambda1", "2", "--lambda2", "2", "--ell-max", "4"]);
    assert!(o.status.success());
    let recs = lines(&o);
    for r in &recs[..recs.len() - 1] {
        assert_eq!(r["pass"], true, "{r}");
        assert!(r["rel_residual"].as_f64().unwrap() <= 1e-9, "{r}");
    }
}

#[test]
fn fractions_select_the_exact_tier() {
    let o = holobreak(&["verify", "rc-identities", "--lambda1", "5/2", "--lambda2", "7/3", "--ell-max", "2"]);
    assert!(o.status.success());
    assert!(lines(&o).iter().all(|r| r["tier"] == "exact"));
}

#[test]
fn reports_are_deterministic_up_to_wall_time() {
    let args = ["verify", "rc-plancherel", "--lambda1", "2.5", "--lambda2", "3", "--ell-max", "2", "--seed", "7"];
    let a: Vec<Value> = lines(&holobreak(&args)).into_iter().map(without_wall_time).collect();
    let b: Vec<Value> = lines(&holobreak(&args)).into_iter().map(without_wall_time).collect();
    assert_eq!(a, b);
    let keys: Vec<String> = a[..a.len() - 1].iter().map(|r| r["identity"].as_str().unwrap().to_string()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn empty_grid_is_a_config_error() {
    let o = holobreak(&["verify", "rc-identities", "--lambda1", ""]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("empty grid"));
    let o = holobreak(&["verify", "kernels", "--n", ","]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_cases_give_nonzero_exit() {
    let o = holobreak(&["verify", "ortho-poly", "--lambda1", "0.5", "--lambda2", "1", "--lambda", "1", "--ell-max", "3", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    let summary = lines(&o).pop().unwrap();
    assert!(summary["failed"].as_u64().unwrap() > 0);
}

#[test]
fn unknown_suite_is_rejected() {
    let o = holobreak(&["verify", "no-such-suite"]);
    assert!(!o.status.success());
}

#[test]
fn report_file_csv_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let report = dir.path().join("out.csv");
    std::fs::write(&cfg, format!("# grid\nlambda1 = 9\nlambda2 = 2\nell_max = 1\ncsv = true\nreport = {}\n", report.display())).unwrap();
    let o = holobreak(&["verify", "l2-plancherel", "--config", cfg.to_str().unwrap(), "--lambda1", "2.5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&report).unwrap();
    let mut rows = text.lines();
    assert!(rows.next().unwrap().starts_with("suite,identity,tier,ell,lambda1,lambda2,computed"));
    let body: Vec<&str> = rows.collect();
    assert_eq!(body.len(), 2 * 4);
    assert!(body.iter().all(|r| r.contains(",2.5,2,")));
}

#[test]
fn eval_constants_and_json() {
    let o = holobreak(&["eval", "c_ell 2 2 0"]);
    assert!(o.status.success());
    let v: f64 = stdout(&o).trim().trim_end_matches("+0i").parse().unwrap();
    assert!((v - 1.0 / 6.0).abs() < 1e-15);
    let o = holobreak(&["eval", "1", "--json"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["value_re"], 1.0);
    assert_eq!(v["value_im"], 0.0);
}

#[test]
fn eval_psi_matches_closed_form() {
    let at = "0.3+1.1i,-0.4+0.7i";
    let psi = "psi 2.5 3 1 (sum 1 (term 1 (mono 0) (pow (poly (1 1) ((c 0 1) 0)) -15/2)))";
    let get = |expr: &str| -> Value { serde_json::from_str(stdout(&holobreak(&["eval", expr, "--at", at, "--json"])).trim()).unwrap() };
    let (a, b) = (get(psi), get("psi_ktype 2.5 3 1"));
    let (ar, ai, br, bi) = (a["value_re"].as_f64().unwrap(), a["value_im"].as_f64().unwrap(), b["value_re"].as_f64().unwrap(), b["value_im"].as_f64().unwrap());
    let err = ((ar - br).powi(2) + (ai - bi).powi(2)).sqrt() / (br * br + bi * bi).sqrt();
    assert!(err < 1e-10, "{a} vs {b}");
}

#[test]
fn eval_reports_parse_positions() {
    let o = holobreak(&["eval", "(sum 1 (term 1 (mono 0 0)))", "--at", "1+1i"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error at byte"));
    let o = holobreak(&["eval", "gamma", "--at", "-2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pole"));
}
