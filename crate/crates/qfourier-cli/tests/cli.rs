use std::path::Path;
use std::process::{Command, Output};

use qfourier_core::qfourier::{coefficients, partial_sum_theta, CoefficientForm, Function};
use qfourier_core::zeros::find_sine_zeros;
use qfourier_core::QContext;
use tempfile::TempDir;

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfourier"))
        .args(args)
        .current_dir(dir)
        .env_remove("QFOURIER_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

/// Second column of each data row.
fn values(csv: &str) -> Vec<f64> {
    csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect()
}

fn coeff_values(json: &str) -> Vec<f64> {
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    v["values"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().parse().unwrap()).collect()
}

#[test]
fn eval_examples() {
    let d = TempDir::new().unwrap();
    let o = run_in(d.path(), &["eval", "--q", "0.5", "--fn", "S", "--omega", "0", "--theta", "1.0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next().unwrap(), "theta,value,imag_residue");
    assert_eq!(values(&stdout(&o)), vec![0.0]);

    let o = run_in(d.path(), &["eval", "--q", "0.5", "--fn", "C", "--omega", "0.4", "--theta", "grid:0:pi:9"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 10);

    // q = 0.999 sits 8e-5 from the classical cos(0.6)
    let o = run_in(d.path(), &["eval", "--q", "0.999", "--fn", "C", "--omega-classical", "2", "--x", "0.3"]);
    let v = values(&stdout(&o))[0];
    assert!((v - 0.6f64.cos()).abs() < 2e-4, "{v}");
}

#[test]
fn eval_exponential_and_json() {
    let d = TempDir::new().unwrap();
    let e = run_in(d.path(), &["eval", "--q", "0.5", "--fn", "E", "--omega", "0.7", "--x", "0.3", "--format", "json"]);
    let c = run_in(d.path(), &["eval", "--q", "0.5", "--fn", "C", "--omega", "0.7", "--x", "0.3"]);
    let s = run_in(d.path(), &["eval", "--q", "0.5", "--fn", "S", "--omega", "0.7", "--x", "0.3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&e)).unwrap();
    // serde_json's default float parsing can be one ulp off
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-15 * b.abs();
    assert!(close(v[0]["value"].as_f64().unwrap(), values(&stdout(&c))[0]));
    assert!(close(v[0]["imag_residue"].as_f64().unwrap(), values(&stdout(&s))[0]));
}

#[test]
fn exit_codes() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    assert_eq!(code(&run_in(p, &["zeros", "--q", "1.5", "--count", "3"])), 2);
    assert_eq!(code(&run_in(p, &["eval", "--fn", "C", "--omega", "0.4", "--theta", "1"])), 2);
    assert_eq!(code(&run_in(p, &["eval", "--q", "0.5", "--fn", "C", "--omega", "0.4", "--x", "1.5"])), 2);
    let o = run_in(p, &["eval", "--q", "0.5", "--fn", "C", "--omega", "3", "--theta", "1", "--rep", "phi21"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).starts_with("error: domain error"));
    let o = run_in(p, &["eval", "--q", "0.5", "--fn", "C", "--omega", "0.4", "--theta", "1", "--max-terms", "16"]);
    assert_eq!(code(&o), 3);
    assert_eq!(code(&run_in(p, &["verify", "--suite", "limits", "--q", "0.5"])), 1);
}

#[test]
fn zeros_cache_and_determinism() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    let first = run_in(p, &["zeros", "--q", "0.5", "--count", "10", "--kind", "sine", "--out", "s.csv"]);
    assert_eq!(code(&first), 0);
    assert!(stderr(&first).starts_with("computed"));
    let csv = std::fs::read_to_string(p.join("s.csv")).unwrap();
    assert_eq!(csv.lines().count(), 11);
    assert!(csv.starts_with("index,omega,residual,bracket_lo,bracket_hi\n"));
    let side: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p.join("s.json")).unwrap()).unwrap();
    assert_eq!(side["kind"], "SineZeros");
    assert_eq!(side["q"], 0.5);

    let again = run_in(p, &["zeros", "--q", "0.5", "--count", "10", "--kind", "sine", "--out", "t.csv"]);
    assert!(stderr(&again).starts_with("cache hit"));
    assert_eq!(std::fs::read(p.join("s.csv")).unwrap(), std::fs::read(p.join("t.csv")).unwrap());

    // a shorter request is served from the longer table
    let short = run_in(p, &["zeros", "--q", "0.5", "--count", "4"]);
    assert!(stderr(&short).starts_with("cache hit"));
    assert_eq!(stdout(&short), csv.lines().take(5).map(|l| format!("{l}\n")).collect::<String>());

    let cos = run_in(p, &["zeros", "--q", "0.5", "--count", "10", "--kind", "cosine"]);
    assert!(stderr(&cos).contains("interlacing verified on 10"));
    assert!(p.join(".qfourier-cache").is_dir());
}

#[test]
fn cache_dir_from_environment() {
    let d = TempDir::new().unwrap();
    let cache = d.path().join("envcache");
    let o = Command::new(env!("CARGO_BIN_EXE_qfourier"))
        .args(["zeros", "--q", "0.25", "--count", "3"])
        .current_dir(d.path())
        .env("QFOURIER_CACHE_DIR", &cache)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 2);
    assert!(!d.path().join(".qfourier-cache").exists());
}

#[test]
fn coefficients_of_builtins() {
    let d = TempDir::new().unwrap();
    let o = run_in(d.path(), &["coeffs", "--q", "0.5", "--fn", "one", "--n-max", "4"]);
    assert_eq!(code(&o), 0);
    let v = coeff_values(&stdout(&o));
    assert_eq!(v.len(), 9);
    assert!((v[0] - 1.0).abs() < 1e-12);
    assert!(v[1..].iter().all(|x| x.abs() < 1e-12));

    // real layout: a_0..a_4 then b_1..b_4
    let o = run_in(d.path(), &["coeffs", "--q", "0.5", "--fn", "mode:S:2", "--n-max", "4"]);
    let v = coeff_values(&stdout(&o));
    for (i, x) in v.iter().enumerate() {
        let want = if i == 6 { 1.0 } else { 0.0 };
        assert!((x - want).abs() < 1e-12, "{i}: {x}");
    }
    // a mode past N still builds from a longer table
    let o = run_in(d.path(), &["coeffs", "--q", "0.5", "--fn", "mode:C:6", "--n-max", "3"]);
    assert_eq!(code(&o), 0);
    assert!(coeff_values(&stdout(&o)).iter().all(|x| x.abs() < 1e-10));
}

#[test]
fn coefficients_then_synthesis() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    assert_eq!(code(&run_in(p, &["coeffs", "--q", "0.5", "--fn", "x", "--n-max", "8", "--out", "x.json"])), 0);
    let o = run_in(p, &["synth", "--coeffs", "x.json", "--theta", "grid:0.5:2.5:5"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let k = QContext::new(0.5).unwrap();
    let t = find_sine_zeros(8, &k).unwrap();
    let lib = coefficients(&Function::x(), CoefficientForm::Real, 8, &t, &k).unwrap();
    for line in out.lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let want = partial_sum_theta(&lib, f[0], 8, &k).unwrap();
        assert!((f[1] - want.re).abs() <= 1e-14, "{line}");
        // eight modes leave a few percent of truncation error
        assert!((f[1] - f[0].cos()).abs() < 5e-2, "{line}");
        assert_eq!(f[2], 0.0);
    }
    // N = 0 leaves only a_0 = 0
    let o = run_in(p, &["synth", "--coeffs", "x.json", "--theta", "1", "--n", "0"]);
    assert!(values(&stdout(&o))[0].abs() < 1e-12);
    // deterministic bytes
    assert_eq!(code(&run_in(p, &["coeffs", "--q", "0.5", "--fn", "x", "--n-max", "8", "--out", "y.json"])), 0);
    assert_eq!(std::fs::read(p.join("x.json")).unwrap(), std::fs::read(p.join("y.json")).unwrap());
    assert_eq!(stdout(&run_in(p, &["synth", "--coeffs", "x.json"])), stdout(&run_in(p, &["synth", "--coeffs", "y.json"])));

    // q clash and a foreign spectrum
    assert_eq!(code(&run_in(p, &["synth", "--coeffs", "x.json", "--q", "0.25"])), 2);
    let text = std::fs::read_to_string(p.join("x.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["spectrum_ref"] = "0".repeat(64).into();
    std::fs::write(p.join("bad.json"), v.to_string()).unwrap();
    assert_eq!(code(&run_in(p, &["synth", "--coeffs", "bad.json"])), 4);
}

#[test]
fn no_auto_needs_a_cache() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    let o = run_in(p, &["coeffs", "--q", "0.5", "--fn", "x", "--n-max", "4", "--no-auto"]);
    assert_eq!(code(&o), 4);
    assert_eq!(code(&run_in(p, &["zeros", "--q", "0.5", "--count", "4"])), 0);
    let o = run_in(p, &["coeffs", "--q", "0.5", "--fn", "x", "--n-max", "4", "--no-auto", "--out", "x.json"]);
    assert_eq!(code(&o), 0);
    std::fs::remove_dir_all(p.join(".qfourier-cache")).unwrap();
    assert_eq!(code(&run_in(p, &["synth", "--coeffs", "x.json", "--no-auto"])), 4);
    assert_eq!(code(&run_in(p, &["synth", "--coeffs", "x.json"])), 0);
}

#[test]
fn point_functions() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    // samples of x = cos θ on a fine grid reproduce the builtin coefficients
    let mut text = String::from("theta,f\n# comment\n");
    for i in 0..=400 {
        let t = std::f64::consts::PI * i as f64 / 400.0;
        text.push_str(&format!("{t},{}\n", t.cos()));
    }
    std::fs::write(p.join("x.csv"), text).unwrap();
    let pts = coeff_values(&stdout(&run_in(p, &["coeffs", "--q", "0.5", "--points", "x.csv", "--n-max", "3"])));
    let builtin = coeff_values(&stdout(&run_in(p, &["coeffs", "--q", "0.5", "--fn", "x", "--n-max", "3"])));
    for (a, b) in pts.iter().zip(&builtin) {
        assert!((a - b).abs() < 1e-4, "{a} {b}");
    }
    std::fs::write(p.join("bad.csv"), "0,1\nnot,a,row\n").unwrap();
    assert_eq!(code(&run_in(p, &["coeffs", "--q", "0.5", "--points", "bad.csv", "--n-max", "2"])), 2);
}

#[test]
fn config_file_under_flags() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    std::fs::write(p.join("run.cfg"), "# settings\nq = 0.25\noutput_format = json\ncache_dir = cfgcache\n").unwrap();
    let from_file = run_in(p, &["eval", "--config", "run.cfg", "--fn", "C", "--omega", "0.4", "--theta", "1"]);
    let explicit = run_in(p, &["eval", "--q", "0.25", "--format", "json", "--fn", "C", "--omega", "0.4", "--theta", "1"]);
    assert_eq!(stdout(&from_file), stdout(&explicit));
    let flag_wins = run_in(p, &["eval", "--config", "run.cfg", "--q", "0.5", "--format", "csv", "--fn", "C", "--omega", "0.4", "--theta", "1"]);
    let plain = run_in(p, &["eval", "--q", "0.5", "--fn", "C", "--omega", "0.4", "--theta", "1"]);
    assert_eq!(stdout(&flag_wins), stdout(&plain));
    assert_eq!(code(&run_in(p, &["zeros", "--config", "run.cfg", "--count", "2"])), 0);
    assert!(p.join("cfgcache").is_dir());

    std::fs::write(p.join("bad.cfg"), "colour = blue\n").unwrap();
    assert_eq!(code(&run_in(p, &["eval", "--config", "bad.cfg", "--q", "0.5", "--fn", "C", "--omega", "0", "--theta", "1"])), 2);
}

#[test]
fn verify_suites() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    let o = run_in(p, &["verify", "--suite", "identities", "--q", "0.5"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));

    let o = run_in(p, &["verify", "--suite", "orthogonality", "--q", "0.25", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|c| c["status"] == "PASS"));

    let o = run_in(p, &["verify", "--suite", "limits", "--q", "0.9999"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = run_in(p, &["verify", "--suite", "limits", "--q", "0.5"]);
    assert!(stdout(&o).lines().all(|l| l.starts_with("FAIL ")));
}

#[test]
fn verify_all_at_half() {
    let d = TempDir::new().unwrap();
    let o = run_in(d.path(), &["verify", "--suite", "all", "--q", "0.5"]);
    let out = stdout(&o);
    // everything but the q -> 1 limits holds at q = 0.5
    let fails: Vec<&str> = out.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fails.len(), 2, "{out}");
    assert!(fails.iter().all(|l| l.contains("classical") || l.contains("2 sin")));
    assert_eq!(code(&o), 1);
}
