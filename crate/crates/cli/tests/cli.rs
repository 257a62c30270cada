use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tropzeta"));
    c.current_dir(scratch("cwd"));
    for (k, _) in std::env::vars() {
        if k.starts_with("TROPZETA_") {
            c.env_remove(k);
        }
    }
    c
}

fn domain(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../domains").join(name).to_string_lossy().into_owned()
}

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("tropzeta-cli-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn run(c: &mut Command) -> (i32, Value, String) {
    let Output { status, stdout, stderr } = c.output().unwrap();
    let out = String::from_utf8(stdout).unwrap();
    let v = serde_json::from_str(out.trim()).unwrap_or(Value::Null);
    (status.code().unwrap(), v, String::from_utf8(stderr).unwrap())
}

fn re(v: &Value) -> f64 {
    v["value"][0].as_f64().unwrap()
}

#[test]
fn zeta_l_at_two_is_area() {
    let (code, v, _) = run(bin().args(["zeta", "L", "--s", "2"]));
    assert_eq!(code, 0);
    assert!((re(&v) - 10.0 / 3.0).abs() < 1e-6, "{v}");
    assert_eq!(v["route"], "identity");
}

#[test]
fn polygon_zeta_is_exact() {
    let (code, v, _) = run(bin().args(["zeta", &domain("rectangle.json"), "--s", "3"]));
    assert_eq!(code, 0);
    assert_eq!(v["exact"], "7/3");
}

#[test]
fn polygon_residue_at_two_thirds_is_a_regime_error() {
    let (code, _, err) = run(bin().args(["residue", &domain("rectangle.json"), "--at", "2/3"]));
    assert_eq!(code, 2);
    let e: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(e["error"], "numerical_regime");
}

#[test]
fn input_errors_exit_one() {
    let (code, _, err) = run(bin().args(["zeta", "no-such-domain.json", "--s", "2"]));
    assert_eq!(code, 1);
    assert!(serde_json::from_str::<Value>(err.trim()).unwrap()["reason"].is_string());
    let (code, _, _) = run(bin().args(["zeta", "L", "--s", "1"]));
    assert_eq!(code, 1);
    let (code, _, _) = run(bin().args(["zeta", "L"]));
    assert_eq!(code, 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["zeta", "disk", "--s", "2.5+1i", "--eps", "1e-5"];
    let a = bin().args(args).output().unwrap().stdout;
    let b = bin().args(["--threads", "1"]).args(args).output().unwrap().stdout;
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn cuts_csv_has_header() {
    let csv = scratch("csv").join("cuts.csv");
    let (code, _, _) = run(bin().args(["cuts", &domain("L.json"), "--eps", "1e-3", "--csv"]).arg(&csv));
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), "a,b,c,d,size,depth,chart");
    assert!(text.lines().count() > 4);
}

#[test]
fn flag_env_and_config_precedence() {
    let dir = scratch("config");
    let cfg = dir.join("tropzeta.toml");
    std::fs::write(&cfg, "eps = 1e-2\n").unwrap();
    let cutoff = |c: &mut Command| run(c).1["cutoff"].as_f64().unwrap();

    let from_file = cutoff(bin().arg("--config").arg(&cfg).args(["zeta", "L", "--s", "2"]));
    assert_eq!(from_file, 1e-2);
    let from_env = cutoff(bin().arg("--config").arg(&cfg).env("TROPZETA_EPS", "1e-3").args(["zeta", "L", "--s", "2"]));
    assert_eq!(from_env, 1e-3);
    let from_flag =
        cutoff(bin().arg("--config").arg(&cfg).env("TROPZETA_EPS", "1e-3").args(["zeta", "L", "--s", "2", "--eps", "1e-4"]));
    assert_eq!(from_flag, 1e-4);
    let from_cwd = cutoff(bin().current_dir(&dir).args(["zeta", "L", "--s", "2"]));
    assert_eq!(from_cwd, 1e-2);
}

#[test]
fn unknown_config_key_is_rejected() {
    let cfg = scratch("badcfg").join("bad.toml");
    std::fs::write(&cfg, "colour = \"red\"\n").unwrap();
    let (code, _, _) = run(bin().arg("--config").arg(&cfg).args(["zeta", "L", "--s", "2"]));
    assert_eq!(code, 1);
}

#[test]
fn verify_single_criterion() {
    let (code, _, _) = run(bin().args(["verify", "--only", "6"]));
    assert_eq!(code, 0);
}
