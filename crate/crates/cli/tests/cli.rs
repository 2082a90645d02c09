use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn descent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_descent"))
        .args(args)
        .env("DESCENT_TRIALS", "4")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_passes_and_prints_seed() {
    let out = descent(&["verify", "--seed", "42"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["seed"], 42);
    assert_eq!(v["trials"], 4);
    let names: Vec<&str> = v["identities"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    for needed in [
        "hodge.duality",
        "codifferential.nilpotent",
        "projector.resolution",
        "wave.laplace_beltrami",
    ] {
        assert!(names.contains(&needed), "{needed} missing");
    }
}

#[test]
fn verify_across_dimensions_in_text() {
    let out = descent(&[
        "verify", "--dims", "2,3,4,5", "--trials", "2", "--format", "text",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("seed 0 trials 2 dims 2,3,4,5"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn corrupted_hodge_fails_duality() {
    let out = descent(&["verify", "--dims", "3", "--inject-fault", "hodge-sign"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("hodge.duality"));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(code(&descent(&["verify", "--dims", "9"])), 2);
    assert_eq!(code(&descent(&["verify", "--seed", "x"])), 2);
    assert_eq!(code(&descent(&["nonsense"])), 2);
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{not json");
    assert_eq!(
        code(&descent(&[
            "reduce",
            "--input",
            s(&bad),
            "--mode",
            "single"
        ])),
        2
    );
    let unknown = write(&dir, "unknown.json", r#"{"Qx": "t"}"#);
    assert_eq!(
        code(&descent(&[
            "reduce",
            "--input",
            s(&unknown),
            "--mode",
            "single"
        ])),
        2
    );
    let badpoly = write(&dir, "badpoly.json", r#"{"Ex": "t +* x"}"#);
    assert_eq!(
        code(&descent(&[
            "reduce",
            "--input",
            s(&badpoly),
            "--mode",
            "single"
        ])),
        2
    );
}

#[test]
fn decompose_ex_only_double() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "ex.json", r#"{"Ex": "t x"}"#);
    let out = descent(&["decompose", "--input", s(&input), "--mode", "double"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let f = &json(&out)["F"]["components"];
    assert_eq!(f["(0,0)"], "(t x) dt^dx");
    for slot in ["(0,1)", "(1,0)", "(1,1)"] {
        assert_eq!(f[slot], "0");
    }
}

#[test]
fn decompose_dz_single() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "dz.json", r#"{"dim": 4, "form": "dz"}"#);
    let out = descent(&["decompose", "--input", s(&input), "--mode", "single"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["components"]["(1)"], "1");
    assert_eq!(v["components"]["(0)"], "0");
}

#[test]
fn decompose_along_y() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "dy.json", r#"{"dim": 3, "form": "(x) dx^dy"}"#);
    let out = descent(&[
        "decompose",
        "--input",
        s(&input),
        "--mode",
        "single",
        "--axis",
        "y",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(json(&out)["components"]["(1)"], "(-x) dx");
}

#[test]
fn descent_violation_exits_3() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "z.json", r#"{"Ey": "z"}"#);
    let out = descent(&["decompose", "--input", s(&cfg), "--mode", "single"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("Ey depends on z"));
    let out = descent(&["reduce", "--input", s(&cfg), "--mode", "double"]);
    assert_eq!(code(&out), 3);
    let form = write(&dir, "f.json", r#"{"form": "(z) dt"}"#);
    assert_eq!(
        code(&descent(&[
            "decompose",
            "--input",
            s(&form),
            "--mode",
            "single"
        ])),
        3
    );
}

fn residuals(v: &Value) -> Vec<(String, String)> {
    v["residuals"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(k, r)| (k.clone(), r.as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn reduce_plane_wave_is_all_zero() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "pw.json", r#"{"Ey": "t - x", "Bz": "t - x"}"#);
    for mode in ["single", "double"] {
        let out = descent(&["reduce", "--input", s(&input), "--mode", mode]);
        assert_eq!(code(&out), 0);
        let v = json(&out);
        assert!(residuals(&v).iter().all(|(_, r)| r == "0"), "{v}");
        assert_eq!(v["solves_maxwell"], true);
    }
}

#[test]
fn reduce_reports_missing_current() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "ex.json", r#"{"Ex": "t"}"#);
    let out = descent(&["reduce", "--input", s(&input), "--mode", "single"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["residuals"]["EEB.ampere"], "(1) dt^dy");
    assert_eq!(v["crosscheck"]["EEB3"]["componentwise"], "-1");
    assert_eq!(v["crosscheck"]["EEB3"]["agrees"], true);
    let out = descent(&["reduce", "--input", s(&input), "--mode", "double"]);
    let v = json(&out);
    assert_eq!(v["residuals"]["sector.Ex.ampere"], "(-1) dt");
    assert_eq!(v["crosscheck"]["E2"]["intrinsic"], "-1");
}

#[test]
fn reduce_zero_config() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "zero.json", "{}");
    let out = descent(&["reduce", "--input", s(&input), "--mode", "double"]);
    assert_eq!(code(&out), 0);
    assert!(residuals(&json(&out)).iter().all(|(_, r)| r == "0"));
}

fn simulate(dir: &TempDir, init: &Path, extra: &[&str], name: &str) -> (Output, String) {
    let csv = dir.path().join(name);
    let mut args = vec![
        "simulate",
        "--nx",
        "16",
        "--ny",
        "16",
        "--nz",
        "1",
        "--dx",
        "0.0625",
        "--courant",
        "0.5",
        "--init",
        s(init),
        "--output",
        s(&csv),
    ];
    args.extend_from_slice(extra);
    let out = descent(&args);
    let body = fs::read_to_string(&csv).unwrap_or_default();
    (out, body)
}

#[test]
fn simulate_pure_eeb_keeps_bbe_empty() {
    let dir = TempDir::new().unwrap();
    let init = write(
        &dir,
        "eeb.json",
        r#"{"Ex": "1/2 y", "Ey": "x y - x", "Bz": "x^2 - y"}"#,
    );
    let (out, body) = simulate(
        &dir,
        &init,
        &["--steps", "1000", "--every", "100"],
        "eeb.csv",
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let mut lines = body.lines();
    assert_eq!(
        lines.next().unwrap(),
        "step,time,eeb_energy,bbe_energy,total,divB_max,leakage"
    );
    let last: Vec<f64> = lines
        .last()
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    assert_eq!(last[0], 1000.0);
    assert!(last[6] <= 1e-12);
    assert!(String::from_utf8_lossy(&out.stdout).contains("max_leakage"));
}

#[test]
fn simulate_zero_init_is_all_zero() {
    let dir = TempDir::new().unwrap();
    let init = write(&dir, "zero.json", "{}");
    let (out, body) = simulate(&dir, &init, &["--steps", "5"], "zero.csv");
    assert_eq!(code(&out), 0);
    for line in body.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(cols[2..].iter().all(|&v| v == 0.0), "{line}");
    }
}

#[test]
fn simulate_rejects_courant_above_one() {
    let dir = TempDir::new().unwrap();
    let init = write(&dir, "zero.json", "{}");
    let out = descent(&[
        "simulate",
        "--nx",
        "4",
        "--ny",
        "4",
        "--nz",
        "1",
        "--dx",
        "0.25",
        "--courant",
        "1.5",
        "--steps",
        "3",
        "--init",
        s(&init),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("Courant"));
}

#[test]
fn outputs_are_deterministic() {
    let a = descent(&["verify", "--seed", "7"]);
    let b = descent(&["verify", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let dir = TempDir::new().unwrap();
    let init = write(&dir, "mix.json", r#"{"Ex": "y", "Bx": "x y", "Ez": "1/3"}"#);
    let (_, first) = simulate(&dir, &init, &["--steps", "20"], "a.csv");
    let (_, second) = simulate(&dir, &init, &["--steps", "20"], "b.csv");
    assert!(!first.is_empty());
    assert_eq!(first, second);
}
