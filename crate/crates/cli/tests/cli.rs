use std::path::PathBuf;
use std::process::{Command, Output};

fn lll(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lll")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(format!("{}-{name}", std::process::id()))
}

#[test]
fn help_exits_zero() {
    let o = lll(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("certify"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(lll(&["--bogus"]).status.code(), Some(1));
    assert_eq!(lll(&["block"]).status.code(), Some(1));
    assert_eq!(lll(&["semiclassical", "--Na", "1", "--h", "1.5"]).status.code(), Some(1));
    assert_eq!(lll(&[]).status.code(), Some(1));
}

#[test]
fn block_five_is_printed_exactly() {
    let o = lll(&["block", "--j", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("B^(5) = (3/8) ×"));
    let rows: Vec<Vec<i64>> = lines
        .take(6)
        .map(|l| {
            l.trim().trim_start_matches('[').trim_end_matches(']').split_whitespace().map(|x| x.parse().unwrap()).collect()
        })
        .collect();
    assert_eq!(rows[0], [45, -35, 5, 5, 5, 5]);
    assert_eq!(rows[3], [5, 5, -7, 9, -11, 5]);
    assert!(text.contains("S^(5) = (3/4) ×"));
}

#[test]
fn block_json_uses_exact_strings() {
    let o = lll(&["--format", "json", "block", "--j", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["s"]["factor"], "3/4");
    assert_eq!(v["s"]["entries"][0][2], "3/4·√2");
}

#[test]
fn certify_prints_one_line_per_block() {
    let o = lll(&["certify", "--max-j", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 35);
    assert!(text.lines().all(|l| l.starts_with("pass j=")));
}

#[test]
fn catalog_round_trip() {
    let path = scratch("psi.json");
    let p = path.to_str().unwrap();
    let o = lll(&["catalog", "--wave", "psi-b", "--b", "1.0", "--trunc", "64", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let o = lll(&["--format", "json", "functionals", "--in", p, "--mu", "0.3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let g = v["g"].as_f64().unwrap();
    // 1 + (μ − 1/2)/(1 + b²)²
    assert!((g - 0.95).abs() < 1e-12, "G = {g}");
    assert!((v["mass"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    std::fs::remove_file(path).ok();
}

#[test]
fn zeros_of_translated_phi1() {
    let path = scratch("phi1a.json");
    let p = path.to_str().unwrap();
    let o = lll(&["catalog", "--wave", "phi-n-alpha", "--n", "1", "--alpha", "0.5,0.5", "--trunc", "64", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let o = lll(&["zeros", "--in", p, "--R", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1 zeros"), "{}", stdout(&o));
    std::fs::remove_file(path).ok();
}

#[test]
fn minimize_is_deterministic() {
    let args = ["--seed", "3", "--format", "json", "minimize", "--mu", "0.3", "--trunc", "24", "--restarts", "3"];
    let a = lll(&args);
    let b = lll(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert!((v["g_value"].as_f64().unwrap() - 0.8).abs() < 1e-8);
}

#[test]
fn scan_emits_closed_form_columns() {
    let o = lll(&["scan", "--from", "0.6", "--to", "1.0", "--step", "0.2", "--trunc", "24", "--restarts", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("mu,G_min,P,H,Qabs,class,b_fit,n_zeros,G_phi0,G_phi1,G_psi1"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    for r in rows {
        let mu: f64 = r[0].parse().unwrap();
        let g1: f64 = r[9].parse().unwrap();
        let gpsi: f64 = r[10].parse().unwrap();
        assert!((g1 - 0.5 - mu).abs() < 1e-10);
        assert!((gpsi - 1.0 - (mu - 0.5) / 4.0).abs() < 1e-10);
        assert_eq!(r[5], "phi0");
    }
}

#[test]
fn semiclassical_report() {
    let o = lll(&["--format", "json", "semiclassical", "--Na", "10", "--h", "0.5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["regime"], "intermediate");
}
