use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn catspin(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catspin"))
        .arg("--output-dir")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary should launch")
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("catspin-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn perturb_emits_the_oracle_bundle() {
    let dir = tmp("perturb");
    let out = catspin(&dir, &["perturb", "--lattice", "triangular", "--extent", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.join("perturb.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["n_atoms"], 3);
    for key in ["u2", "u4", "u6", "oracle"] {
        assert!(v[key].is_f64(), "missing {key}");
    }
}

#[test]
fn profile_writes_a_csv_curve() {
    let dir = tmp("profile");
    let out = catspin(
        &dir,
        &["--no-timestamp", "profile", "--r-steps", "6", "--r-max-rb", "2.0"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.join("profile.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "r_over_rb,u_over_u0");
    assert_eq!(lines.count(), 6);

    // repeated run is byte-identical without the timestamp header
    let again = catspin(
        &dir,
        &["--no-timestamp", "profile", "--r-steps", "6", "--r-max-rb", "2.0"],
    );
    assert!(again.status.success());
    assert_eq!(text, fs::read_to_string(dir.join("profile.csv")).unwrap());
}

#[test]
fn adiabatic_reports_the_scattered_population() {
    let dir = tmp("adiabatic");
    let out = catspin(&dir, &["adiabatic", "--steps", "400"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("scattered"), "{stdout}");
    assert!(dir.join("adiabatic.csv").exists());
}

#[test]
fn catscan_handles_a_small_kerr_problem() {
    let dir = tmp("catscan");
    let out = catspin(
        &dir,
        &[
            "catscan",
            "--hamiltonian", "kerr",
            "--n-atoms", "32",
            "--m-list", "2,3",
            "--samples", "96",
            "--phi0-samples", "8",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("catscan.json")).unwrap()).unwrap();
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    assert!(results[0]["fidelity"].as_f64().unwrap() > 0.99);
}

#[test]
fn evolve_snapshot_at_time_zero_is_the_initial_css() {
    let dir = tmp("evolve");
    let out = catspin(
        &dir,
        &[
            "--no-timestamp",
            "evolve",
            "--hamiltonian", "kerr",
            "--n-atoms", "16",
            "--scaled-times", "0.0",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.join("state_00.csv")).unwrap();
    let probs: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(probs.len(), 17);
    let total: f64 = probs.iter().sum();
    assert!((total - 1.0).abs() < 1e-10);
    // equatorial CSS is binomial at p = 1/2
    let mut binom = 1.0f64;
    for (k, &p) in probs.iter().enumerate() {
        assert!((p - binom * 0.5f64.powi(16)).abs() < 1e-12, "rung {k}");
        binom *= (16 - k) as f64 / (k + 1) as f64;
    }
}

#[test]
fn validation_errors_exit_with_code_two() {
    let dir = tmp("validation");
    let out = catspin(&dir, &["profile", "--gamma-r", "0.0"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));

    let out = catspin(&dir, &["perturb", "--lattice", "square", "--extent", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_is_honored_and_flags_override_it() {
    let dir = tmp("config");
    let cfg = dir.join("run.toml");
    fs::write(&cfg, "[profile]\nr_steps = 4\nr_max_rb = 1.5\n").unwrap();
    let out = catspin(
        &dir,
        &[
            "--no-timestamp",
            "--config", cfg.to_str().unwrap(),
            "profile",
            "--r-steps", "3",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.join("profile.csv")).unwrap();
    assert_eq!(text.lines().count(), 4, "3 rows plus the header");

    // malformed config is a validation failure
    fs::write(&cfg, "[profile]\nnope = 1\n").unwrap();
    let out = catspin(&dir, &["--config", cfg.to_str().unwrap(), "profile"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_format_emits_records() {
    let dir = tmp("json");
    let out = catspin(
        &dir,
        &["--format", "json", "profile", "--r-steps", "3", "--r-max-rb", "1.0"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("profile.json")).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert!(v[0]["r_over_rb"].is_f64());
}
