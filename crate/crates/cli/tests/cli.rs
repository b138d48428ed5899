use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chaosbandit"));
    for (key, _) in std::env::vars() {
        if key.starts_with("CHAOSBANDIT_") {
            cmd.env_remove(key);
        }
    }
    cmd
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn data_rows(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip_while(|l| l.starts_with('#'))
        .skip(1)
        .map(str::to_owned)
        .collect()
}

#[test]
fn run_writes_one_row_per_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_ok(
        bin()
            .args([
                "run",
                "--problem",
                "canonical:2",
                "--source",
                "uniform",
                "--plays",
                "500",
                "--reps",
                "1000",
                "--seed",
                "7",
                "--out-dir",
            ])
            .arg(dir.path()),
    );
    let csv = std::fs::read_to_string(dir.path().join("cdr.csv")).unwrap();
    assert!(csv.starts_with("# config: {"));
    assert_eq!(data_rows(&dir.path().join("cdr.csv")).len(), 500);
    let dump: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("tree_dump.json")).unwrap()).unwrap();
    assert_eq!(dump["config"]["experiment"]["plays"], 500);
    assert!(dump["nodes"][""]["th"].is_number());
    let summary = String::from_utf8(out.stdout).unwrap();
    assert_eq!(summary.lines().count(), 1);
    assert!(summary.starts_with("run: final CDR"));
}

#[test]
fn scaling_writes_fit_fields() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(
        bin()
            .args(["scaling", "--n", "2,4,8,16", "--source", "ar", "--out-dir"])
            .arg(dir.path()),
    );
    let fit: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("fit.json")).unwrap()).unwrap();
    assert!(fit.get("a").is_some() && fit.get("b").is_some());
    assert_eq!(fit["points"].as_array().unwrap().len(), 4);
    assert!(fit["config"].is_object());
}

#[test]
fn etmsd_of_uniform_walks() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(
        bin()
            .args([
                "analyze",
                "etmsd",
                "--source",
                "uniform",
                "--tau",
                "1000",
                "--walks",
                "100",
                "--horizon",
                "100000",
                "--out-dir",
            ])
            .arg(dir.path()),
    );
    let rows = data_rows(&dir.path().join("etmsd.csv"));
    let value: f64 = rows[0].split(',').nth(1).unwrap().parse().unwrap();
    assert!((value - 1000.0).abs() <= 50.0, "{value}");
}

#[test]
fn outputs_are_byte_identical_across_reruns_and_job_counts() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "run",
        "--problem",
        "canonical:4",
        "--plays",
        "80",
        "--reps",
        "200",
        "--seed",
        "3",
    ];
    run_ok(
        bin()
            .args(args)
            .args(["--jobs", "1", "--out-dir"])
            .arg(a.path()),
    );
    run_ok(
        bin()
            .args(args)
            .args(["--jobs", "4", "--out-dir"])
            .arg(b.path()),
    );
    for name in ["cdr.csv", "tree_dump.json"] {
        assert_eq!(
            std::fs::read(a.path().join(name)).unwrap(),
            std::fs::read(b.path().join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn flag_beats_environment_beats_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"{"plays": 30, "reps": 5, "source": "uniform"}"#).unwrap();
    let rows = |cmd: &mut Command| {
        run_ok(
            cmd.arg("--config")
                .arg(&config)
                .arg("--out-dir")
                .arg(dir.path()),
        );
        data_rows(&dir.path().join("cdr.csv")).len()
    };
    assert_eq!(rows(bin().arg("run")), 30);
    assert_eq!(rows(bin().arg("run").env("CHAOSBANDIT_PLAYS", "20")), 20);
    assert_eq!(
        rows(
            bin()
                .args(["run", "--plays", "10"])
                .env("CHAOSBANDIT_PLAYS", "20")
        ),
        10
    );
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"{"playz": 30}"#).unwrap();
    let out = bin()
        .arg("run")
        .arg("--config")
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("playz"));
}

#[test]
fn usage_errors_exit_2_and_runtime_errors_exit_1() {
    let bad_flag = bin().args(["run", "--no-such-flag"]).output().unwrap();
    assert_eq!(bad_flag.status.code(), Some(2));
    let bad_problem = bin()
        .args(["run", "--problem", "canonical"])
        .output()
        .unwrap();
    assert_eq!(bad_problem.status.code(), Some(2));
    let missing = bin()
        .args([
            "run",
            "--source",
            "trace",
            "--trace-path",
            "/no/such/trace.csv",
        ])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/no/such/trace.csv"));
}

#[test]
fn generated_trace_drives_a_run() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(
        bin()
            .args([
                "gen-signal",
                "--source",
                "ar",
                "--length",
                "20000",
                "--seed",
                "2",
                "--out-dir",
            ])
            .arg(dir.path()),
    );
    let trace = dir.path().join("signal.csv");
    assert!(std::fs::read_to_string(&trace)
        .unwrap()
        .starts_with("# period_ps=10\n# config: "));
    run_ok(
        bin()
            .args([
                "run",
                "--source",
                "trace",
                "--plays",
                "50",
                "--reps",
                "20",
                "--trace-path",
            ])
            .arg(&trace)
            .arg("--out-dir")
            .arg(dir.path()),
    );
    assert_eq!(data_rows(&dir.path().join("cdr.csv")).len(), 50);
    // 500 plays x 20 reps x 5 samples exceed the 20000-sample trace.
    let short = bin()
        .args([
            "run",
            "--source",
            "trace",
            "--plays",
            "500",
            "--reps",
            "20",
            "--trace-path",
        ])
        .arg(&trace)
        .output()
        .unwrap();
    assert_eq!(short.status.code(), Some(1));
    run_ok(
        bin()
            .args([
                "run",
                "--source",
                "trace",
                "--plays",
                "500",
                "--reps",
                "20",
                "--wrap",
                "--trace-path",
            ])
            .arg(&trace)
            .arg("--out-dir")
            .arg(dir.path()),
    );
}

#[test]
fn sweeps_and_analyses_write_their_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run_ok(
        bin()
            .args([
                "sweep-ds",
                "--values",
                "1,5",
                "--reps",
                "50",
                "--cycle",
                "10",
                "--out-dir",
            ])
            .arg(d),
    );
    assert_eq!(data_rows(&d.join("sweep_ds.csv")).len(), 2);
    run_ok(
        bin()
            .args([
                "sweep-dl",
                "--values",
                "0,10",
                "--reps",
                "20",
                "--cycle",
                "20",
                "--out-dir",
            ])
            .arg(d),
    );
    let dl = std::fs::read_to_string(d.join("sweep_dl.csv")).unwrap();
    assert!(dl.contains("\ndelta_l,type1,type2,type3,type4,cv\n"));
    run_ok(
        bin()
            .args([
                "sweep-levels",
                "--k",
                "2,8",
                "--p1",
                "0.7",
                "--reps",
                "20",
                "--cycle",
                "30",
                "--out-dir",
            ])
            .arg(d),
    );
    assert_eq!(data_rows(&d.join("sweep_levels.csv")).len(), 2);
    run_ok(
        bin()
            .args([
                "analyze",
                "acf",
                "--length",
                "100000",
                "--max-lag",
                "10",
                "--out-dir",
            ])
            .arg(d),
    );
    let acf = data_rows(&d.join("acf.csv"));
    assert_eq!(acf.len(), 11);
    assert_eq!(acf[0], "0,1");
    run_ok(
        bin()
            .args(["analyze", "spectrum", "--length", "4096", "--out-dir"])
            .arg(d),
    );
    assert_eq!(data_rows(&d.join("spectrum.csv")).len(), 2049 - 20 + 1);
    run_ok(
        bin()
            .args([
                "analyze",
                "condition",
                "--walks",
                "5",
                "--horizon",
                "4000",
                "--lag",
                "100",
                "--out-dir",
            ])
            .arg(d),
    );
    let cond: serde_json::Value =
        serde_json::from_slice(&std::fs::read(d.join("condition.json")).unwrap()).unwrap();
    assert!(cond["condition_number"].as_f64().unwrap() >= 1.0);
}
