//! End-to-end checks of the `cubicdisc` binary: every subcommand is invoked
//! the way a shell user would, and the JSON it prints is parsed back.

use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

const FERMAT: &str = r#"{"degree":3,"coeffs":[
  {"exp":[3,0,0],"re":1,"im":0},
  {"exp":[0,3,0],"re":1,"im":0},
  {"exp":[0,0,3],"re":1,"im":0}]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cubicdisc"))
}

fn run_json(args: &[&str], stdin: Option<&str>) -> Value {
    let mut cmd = bin();
    cmd.args(args).stdout(Stdio::piped());
    if stdin.is_some() {
        cmd.stdin(Stdio::piped());
    }
    let mut child = cmd.spawn().unwrap();
    if let Some(input) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(input.as_bytes())
            .unwrap();
    }
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success(), "{:?} failed: {out:?}", args);
    serde_json::from_slice(&out.stdout).unwrap()
}

fn cpx(v: &Value) -> (f64, f64) {
    let a = v.as_array().unwrap();
    (a[0].as_f64().unwrap(), a[1].as_f64().unwrap())
}

fn fermat_file() -> std::path::PathBuf {
    let path = std::env::temp_dir().join("cubicdisc-cli-fermat.json");
    std::fs::write(&path, FERMAT).unwrap();
    path
}

#[test]
fn disc_from_file_and_stdin() {
    let path = fermat_file();
    let from_file = run_json(&["disc", path.to_str().unwrap()], None);
    let from_stdin = run_json(&["disc", "-"], Some(FERMAT));
    for v in [&from_file, &from_stdin] {
        let (re, im) = cpx(&v["delta"]);
        assert!((re + 19683.0).abs() < 1e-9 && im.abs() < 1e-9, "{v}");
    }
}

#[test]
fn disc_both_routes_agree() {
    let path = fermat_file();
    let v = run_json(&["disc", "--both", path.to_str().unwrap()], None);
    assert!(v["relative_gap"].as_f64().unwrap() < 1e-8, "{v}");
    let (re, _) = cpx(&v["delta_theta"]);
    assert!((re + 19683.0).abs() < 1e-6, "{v}");
}

#[test]
fn reduce_reports_invariants() {
    let path = fermat_file();
    let v = run_json(&["reduce", path.to_str().unwrap()], None);
    // Fermat has j = 0: g2 vanishes after reduction
    let (g2re, g2im) = cpx(&v["g2"]);
    assert!(g2re.hypot(g2im) < 1e-9, "{v}");
    let (dre, dim) = cpx(&v["detM"]);
    assert!(dre.hypot(dim) > 1e-6, "{v}");
}

#[test]
fn periods_and_theta_chain() {
    let v = run_json(&["periods", "--g2", "2,0", "--g3", "0.5,0"], None);
    let (tre, tim) = cpx(&v["tau"]);
    assert!(tim > 0.0, "{v}");
    // --tau=... survives a negative real part that bare args would parse as a flag
    let tau = format!("--tau={tre},{tim}");
    let t = run_json(&["theta", &tau], None);
    // theta1'(0) = pi * a * b * c
    let (ar, ai) = cpx(&t["a"]);
    let (br, bi) = cpx(&t["b"]);
    let (cr, ci) = cpx(&t["c"]);
    let a = num_complex::Complex64::new(ar, ai);
    let b = num_complex::Complex64::new(br, bi);
    let c = num_complex::Complex64::new(cr, ci);
    let (pr, pi) = cpx(&t["theta1prime0"]);
    let p = num_complex::Complex64::new(pr, pi);
    assert!((p - std::f64::consts::PI * a * b * c).norm() < 1e-10, "{t}");
}

#[test]
fn detrep_torsion_line_shape() {
    let path = fermat_file();
    let v = run_json(&["detrep", "torsion-line", path.to_str().unwrap()], None);
    assert_eq!(v["dim"].as_u64(), Some(3), "{v}");
    // pencil matrices are emitted row-major: 9 complex entries each
    for key in ["L", "M", "N"] {
        assert_eq!(v[key].as_array().unwrap().len(), 9, "{v}");
    }
    assert!(v["verification"].is_object() || v["verification"].is_number());
}

#[test]
fn selftest_exit_code() {
    let status = bin()
        .args(["selftest", "--seed", "7", "--count", "2"])
        .stdout(Stdio::null())
        .status()
        .unwrap();
    assert!(status.success());
}

#[test]
fn malformed_input_is_an_error() {
    let mut child = bin()
        .args(["disc", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"not json").unwrap();
    assert!(!child.wait().unwrap().success());
}
