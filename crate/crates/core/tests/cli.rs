mod common;

use std::path::{Path, PathBuf};
use std::process::Command;

use common::rel_close;
use ffdelay::cli::{run, CommandOutcome};
use tempfile::TempDir;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/synthetic").join(name).display().to_string()
}

fn ffdelay(args: &[&str]) -> CommandOutcome {
    run(std::iter::once("ffdelay").chain(args.iter().copied()))
}

fn out_dir(tmp: &TempDir, name: &str) -> String {
    tmp.path().join(name).display().to_string()
}

fn write(tmp: &TempDir, name: &str, text: &str) -> String {
    let path = tmp.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn listing(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}

fn column(csv: &str, index: usize) -> Vec<f64> {
    csv.lines().skip(1).map(|l| l.split(',').nth(index).unwrap().parse().unwrap()).collect()
}

const QUICK_CONFIG: &str = "variant = \"single_delay\"\n[fit]\nstarts = 6\nseed = 2\n";

#[test]
fn fit_bundled_dataset_then_predict_reproduces_it() {
    let tmp = TempDir::new().unwrap();
    let fit_out = out_dir(&tmp, "fit");
    let outcome = ffdelay(&[
        "fit", "--load", &data("load.csv"), "--perf", &data("perf.csv"),
        "--config", &data("config.toml"), "--out", &fit_out,
    ]);
    assert_eq!(outcome.exit_code, 0, "{}", outcome.message);
    let r2: f64 = outcome
        .message
        .lines()
        .find_map(|l| l.strip_prefix("R²: "))
        .expect("summary prints R²")
        .parse()
        .unwrap();
    assert!(r2 >= 0.9999);
    assert!(outcome.message.contains("SSE: "));
    let names: Vec<_> = listing(Path::new(&fit_out)).iter().map(|p| p.file_name().unwrap().to_owned()).collect();
    assert_eq!(names, ["fit_chart.svg", "load_chart.svg", "params.toml", "predictions.csv"]);

    let pred_out = out_dir(&tmp, "predict");
    let params = format!("{fit_out}/params.toml");
    let outcome = ffdelay(&[
        "predict", "--load", &data("load.csv"), "--params", &params, "--horizon", "120", "--out", &pred_out,
    ]);
    assert_eq!(outcome.exit_code, 0, "{}", outcome.message);
    let strip = |text: String| -> Vec<String> {
        text.lines().map(|l| l.splitn(4, ',').take(3).collect::<Vec<_>>().join(",")).collect()
    };
    let fitted = std::fs::read_to_string(format!("{fit_out}/predictions.csv")).unwrap();
    let predicted = std::fs::read_to_string(format!("{pred_out}/predictions.csv")).unwrap();
    assert_eq!(strip(fitted), strip(predicted));
    assert!(Path::new(&pred_out).join("prediction_chart.svg").exists());

    let outcome = ffdelay(&[
        "predict", "--load", &data("load.csv"), "--params", &params, "--horizon", "121", "--out", &pred_out,
    ]);
    assert_eq!(outcome.exit_code, 2);
}

#[test]
fn missing_load_file_is_a_data_error_naming_the_path() {
    let tmp = TempDir::new().unwrap();
    let out = out_dir(&tmp, "out");
    let missing = tmp.path().join("absent.csv").display().to_string();
    let outcome = ffdelay(&[
        "fit", "--load", &missing, "--perf", &data("perf.csv"), "--config", &data("config.toml"), "--out", &out,
    ]);
    assert_eq!(outcome.exit_code, 2);
    assert!(outcome.message.contains(&missing));
    assert!(!Path::new(&out).exists());
}

#[test]
fn too_few_or_flat_observations_are_data_errors() {
    let tmp = TempDir::new().unwrap();
    let config = write(&tmp, "config.toml", QUICK_CONFIG);
    let one = write(&tmp, "one.csv", "day,performance\n10,500\n");
    let flat = write(&tmp, "flat.csv", "day,performance\n10,500\n20,500\n30,500\n");
    let out = out_dir(&tmp, "out");
    for cmd in ["fit", "compare"] {
        let o = ffdelay(&[cmd, "--load", &data("load.csv"), "--perf", &one, "--config", &config, "--out", &out]);
        assert_eq!(o.exit_code, 2);
        assert!(o.message.contains("R²"), "{}", o.message);
        let o = ffdelay(&[cmd, "--load", &data("load.csv"), "--perf", &flat, "--config", &config, "--out", &out]);
        assert_eq!(o.exit_code, 2);
        assert!(o.message.contains("variance"), "{}", o.message);
    }
    assert!(!Path::new(&out).exists());
}

#[test]
fn malformed_inputs_are_data_errors() {
    let tmp = TempDir::new().unwrap();
    let config = write(&tmp, "config.toml", QUICK_CONFIG);
    let bad_load = write(&tmp, "load.csv", "day,load\n0,0\n1,abc\n");
    let bad_config = write(&tmp, "bad.toml", "variant = \"quadratic\"\n");
    let out = out_dir(&tmp, "out");
    let o = ffdelay(&["fit", "--load", &bad_load, "--perf", &data("perf.csv"), "--config", &config, "--out", &out]);
    assert_eq!(o.exit_code, 2);
    assert!(o.message.contains("line 3"), "{}", o.message);
    let o = ffdelay(&[
        "fit", "--load", &data("load.csv"), "--perf", &data("perf.csv"), "--config", &bad_config, "--out", &out,
    ]);
    assert_eq!(o.exit_code, 2);
}

#[test]
fn failed_commit_removes_already_written_artifacts() {
    let tmp = TempDir::new().unwrap();
    let config = write(&tmp, "config.toml", QUICK_CONFIG);
    let out = tmp.path().join("out");
    std::fs::create_dir_all(out.join("fit_chart.svg/blocker")).unwrap();
    let o = ffdelay(&[
        "fit", "--load", &data("load.csv"), "--perf", &data("perf.csv"), "--config", &config,
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.exit_code, 2, "{}", o.message);
    assert_eq!(listing(&out), [out.join("fit_chart.svg")]);
}

#[test]
fn predict_symmetric_or_unloaded_gives_baseline() {
    let tmp = TempDir::new().unwrap();
    let params = write(
        &tmp,
        "params.toml",
        "variant = \"single_delay\"\np0 = 432.5\nk1 = 0.3\nk2 = 0.3\n\
         [fitness]\ntau_decay = 30.0\ntau_lag = 9.0\n[fatigue]\ntau_decay = 30.0\ntau_lag = 9.0\n",
    );
    let o = ffdelay(&["predict", "--load", &data("load.csv"), "--params", &params, "--horizon", "90", "--out", &out_dir(&tmp, "a")]);
    assert_eq!(o.exit_code, 0, "{}", o.message);
    let csv = std::fs::read_to_string(tmp.path().join("a/predictions.csv")).unwrap();
    assert_eq!(column(&csv, 2), vec![432.5; 90]);

    let zeros = write(&tmp, "zeros.csv", "day,load\n0,0\n40,0\n");
    let o = ffdelay(&[
        "predict", "--load", &zeros, "--params", &data("config.toml"),
        "--horizon", "41", "--out", &out_dir(&tmp, "b"),
    ]);
    assert_eq!(o.exit_code, 2, "a run config is not a params document");
    let reference = ffdelay::io::emit_params_toml(&ffdelay::synthetic::reference_params(), None);
    let params = write(&tmp, "reference.toml", &reference);
    let o = ffdelay(&["predict", "--load", &zeros, "--params", &params, "--horizon", "41", "--out", &out_dir(&tmp, "b")]);
    assert_eq!(o.exit_code, 0, "{}", o.message);
    let csv = std::fs::read_to_string(tmp.path().join("b/predictions.csv")).unwrap();
    assert_eq!(column(&csv, 2), vec![500.0; 41]);
}

#[test]
fn simulate_reductions_and_mapping() {
    let tmp = TempDir::new().unwrap();
    let sim = |name: &str, extra: &[&str]| {
        let out = out_dir(&tmp, name);
        let load = data_load();
        let mut args = vec!["simulate", "--load", &load, "--out", &out];
        args.extend_from_slice(extra);
        let o = ffdelay(&args);
        assert_eq!(o.exit_code, 0, "{}", o.message);
        assert!(Path::new(&out).join("state_chart.svg").exists());
        std::fs::read_to_string(Path::new(&out).join("trajectory.csv")).unwrap()
    };
    let kernel_off = sim("k0", &["--variant", "kernel", "--tau1", "40", "--tau5", "0"]);
    let classical = sim("c", &["--variant", "classical", "--tau1", "40"]);
    assert_eq!(kernel_off, classical);

    let kernel = sim("k", &["--variant", "kernel", "--tau1", "25", "--tau5", "-0.5"]);
    let mapped = sim("t", &["--variant", "three_delay", "--tau1", "25", "--tau2", "4", "--tau3", &(20.0_f64 / 3.0).to_string(), "--tau4", "10"]);
    assert!(rel_close(&column(&kernel, 2), &column(&mapped, 2), 1e-12));

    let no_lag = sim("s", &["--variant", "single_delay", "--tau1", "40", "--tau2", "inf"]);
    assert_eq!(column(&no_lag, 2), column(&classical, 2));
}

fn data_load() -> String {
    data("load.csv")
}

#[test]
fn simulate_usage_errors() {
    let tmp = TempDir::new().unwrap();
    let out = out_dir(&tmp, "out");
    let load = data_load();
    let o = ffdelay(&["simulate", "--load", &load, "--variant", "single_delay", "--tau1", "40", "--out", &out]);
    assert_eq!(o.exit_code, 1);
    assert!(o.message.contains("--tau2") && o.message.contains("usage: ffdelay simulate --variant single_delay"));
    let o = ffdelay(&["simulate", "--load", &load, "--variant", "three_delay", "--tau1", "40", "--tau2", "3", "--out", &out]);
    assert_eq!(o.exit_code, 1);
    assert!(o.message.contains("--tau3"));
    let o = ffdelay(&["simulate", "--load", &load, "--variant", "cubic", "--tau1", "40", "--out", &out]);
    assert_eq!(o.exit_code, 1);
    let o = ffdelay(&["simulate", "--load", &load, "--variant", "classical", "--tau1", "-3", "--out", &out]);
    assert_eq!(o.exit_code, 1);
    assert!(!Path::new(&out).exists());
    assert_eq!(ffdelay(&["fit", "--load"]).exit_code, 1);
    assert_eq!(ffdelay(&["frobnicate"]).exit_code, 1);
    assert_eq!(ffdelay(&["--help"]).exit_code, 0);
}

#[test]
fn compare_ranks_nested_models_and_is_repeatable() {
    let tmp = TempDir::new().unwrap();
    let config = write(&tmp, "config.toml", QUICK_CONFIG);
    let table = |name: &str, seed: &str| {
        let out = out_dir(&tmp, name);
        let o = ffdelay(&[
            "compare", "--load", &data("load.csv"), "--perf", &data("perf.csv"), "--config", &config,
            "--out", &out, "--seed", seed,
        ]);
        assert_eq!(o.exit_code, 0, "{}", o.message);
        std::fs::read_to_string(Path::new(&out).join("comparison.csv")).unwrap()
    };
    let first = table("a", "5");
    assert_eq!(first, table("b", "5"));
    let rows: Vec<Vec<&str>> = first.lines().skip(1).map(|l| l.split(',').collect()).collect();
    let names: Vec<&str> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(names, ["classical", "single_delay", "three_delay", "kernel"]);
    let r2 = |i: usize| rows[i][3].parse::<f64>().unwrap();
    assert!(r2(1) >= r2(0));
    assert!(r2(2) >= r2(1) - 1e-12);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ffdelay");
    let status = Command::new(bin).args(["simulate", "--load", &data_load(), "--variant", "kernel", "--out", "/tmp/never"]).output().unwrap();
    assert_eq!(status.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&status.stderr).contains("--tau1"));
    let status = Command::new(bin).args(["predict", "--load", "/nonexistent/load.csv", "--params", "x", "--horizon", "3", "--out", "/tmp"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
    let tmp = TempDir::new().unwrap();
    let status = Command::new(bin)
        .args(["simulate", "--load", &data_load(), "--variant", "kernel", "--tau1", "9", "--tau5", "-0.2", "--out"])
        .arg(tmp.path())
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&status.stdout).contains("simulated 120 days"));
}
