use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const SCENARIO: &str = r#"{
  "basis": {"c": 1.0, "grid_size": 128, "num_modes": 6},
  "object": {"type": "double_gaussian", "s0": 0.5, "sigma": 0.1},
  "noise": {"kind": "coherent", "mean_photons": 1e12, "seed": 3},
  "k_reconstruct": 6,
  "xi_max": 12.0,
  "trials": 3,
  "xi_points": 481
}
"#;

fn superres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superres"))
        .args(args)
        .env_remove("SUPERRES_OUTPUT_DIR")
        .output()
        .unwrap()
}

fn write_scenario(dir: &Path, text: &str) -> String {
    let p = dir.join("scenario.json");
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_accepts_good_file() {
    let tmp = tempfile::tempdir().unwrap();
    let p = write_scenario(tmp.path(), SCENARIO);
    let o = superres(&["validate", &p]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).contains("ok"));
}

#[test]
fn validate_names_bad_field_and_line() {
    let tmp = tempfile::tempdir().unwrap();
    let p = write_scenario(tmp.path(), &SCENARIO.replace("\"trials\": 3", "\"trials\": 0"));
    let o = superres(&["validate", &p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 7: trials"), "{}", stderr(&o));
}

#[test]
fn missing_scenario_is_an_io_failure() {
    let o = superres(&["run", "/nonexistent/scenario.json"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(superres(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(superres(&["--help"]).status.code(), Some(0));
}

#[test]
fn run_honours_output_dir_flag_and_env() {
    let tmp = tempfile::tempdir().unwrap();
    let p = write_scenario(tmp.path(), SCENARIO);
    let out = tmp.path().join("flag");
    let o = superres(&["run", &p, "--output-dir", out.to_str().unwrap(), "--threads", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(out.join("summary.json").is_file());
    assert!(out.join("trial_0002.csv").is_file());

    let env_out = tmp.path().join("env");
    let o = Command::new(env!("CARGO_BIN_EXE_superres"))
        .args(["run", &p])
        .env("SUPERRES_OUTPUT_DIR", &env_out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        fs::read(out.join("summary.json")).unwrap(),
        fs::read(env_out.join("summary.json")).unwrap()
    );
}

#[test]
fn seed_flag_changes_the_noise() {
    let tmp = tempfile::tempdir().unwrap();
    let p = write_scenario(tmp.path(), SCENARIO);
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    superres(&["run", &p, "--output-dir", a.to_str().unwrap()]);
    superres(&["run", &p, "--output-dir", b.to_str().unwrap(), "--seed", "99"]);
    let sa: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(a.join("summary.json")).unwrap()).unwrap();
    let sb: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(b.join("summary.json")).unwrap()).unwrap();
    assert_eq!(sa["seed"], 3);
    assert_eq!(sb["seed"], 99);
    assert_ne!(
        fs::read(a.join("trial_0000.csv")).unwrap(),
        fs::read(b.join("trial_0000.csv")).unwrap()
    );
}

#[test]
fn unwritable_output_is_an_io_failure() {
    let tmp = tempfile::tempdir().unwrap();
    let p = write_scenario(tmp.path(), SCENARIO);
    let blocker = tmp.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let o = superres(&["run", &p, "--output-dir", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn basis_dumps_json() {
    let o = superres(&["basis", "--c", "1", "--grid-size", "64", "--num-modes", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 3);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 64);
    assert_eq!(v["modes"].as_array().unwrap().len(), 3);
}

#[test]
fn basis_with_too_many_modes_is_a_numerical_failure() {
    let o = superres(&[
        "basis", "--c", "1", "--grid-size", "128", "--num-modes", "12", "--min-eigen-ratio", "1e-9",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("largest safe K is 5"), "{}", stderr(&o));
}

#[test]
fn sweep_prints_table() {
    let tmp = tempfile::tempdir().unwrap();
    let p = write_scenario(tmp.path(), SCENARIO);
    let out = tmp.path().join("sweep");
    let o = superres(&[
        "sweep", &p, "--axis", "mean_photons", "--values", "1e12,1e13",
        "--output-dir", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "value,median_factor,q25_factor,q75_factor");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1000000000000.0,"));
    assert_eq!(fs::read_to_string(out.join("sweep_mean_photons.csv")).unwrap(), text);
}

#[test]
fn sweep_with_bad_axis_exits_one() {
    let tmp = tempfile::tempdir().unwrap();
    let p = write_scenario(tmp.path(), SCENARIO);
    let o = superres(&["sweep", &p, "--axis", "colour", "--values", "1"]);
    assert_eq!(o.status.code(), Some(1));
}
