//! Binary-level behavior: exit codes, help coverage, determinism of output
//! files, and error messages that name the offending input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rggkit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rggkit-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn help_lists_every_flag_per_subcommand() {
    for (cmd, flags) in [
        (
            "constants",
            vec!["--d", "--body", "--plane", "--weight", "--n-samples", "--seed", "--out", "--workers"],
        ),
        (
            "predict",
            vec!["--t", "--delta", "--constants", "--d", "--body", "--weight", "--n-samples", "--seed", "--out"],
        ),
        (
            "experiment",
            vec!["--config", "--out-dir", "--constants", "--n-samples", "--lln-tol", "--tau"],
        ),
        ("search", vec!["--graph", "--k", "--seed", "--weight", "--out"]),
    ] {
        let out = run(&[cmd, "--help"]);
        assert!(out.status.success(), "{cmd} --help");
        let text = stdout_of(&out);
        for flag in flags {
            assert!(text.contains(flag), "{cmd} --help missing {flag}:\n{text}");
        }
    }
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["constants"]); // missing required flags
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["constants", "--d", "1", "--seed", "1", "--n-samples", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("--d"), "message names the flag");
}

#[test]
fn constants_is_deterministic_and_checks_caps() {
    let dir = tmpdir("constants");
    let out_a = dir.join("a.json");
    let out_b = dir.join("b.json");
    for out in [&out_a, &out_b] {
        let res = run(&[
            "constants",
            "--d",
            "3",
            "--n-samples",
            "2e4",
            "--seed",
            "42",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(res.status.code(), Some(0), "{}", stderr_of(&res));
        assert!(stdout_of(&res).contains("PASS"));
    }
    assert_eq!(
        fs::read(&out_a).unwrap(),
        fs::read(&out_b).unwrap(),
        "same flags, same seed, identical files"
    );
    // d=2 analytic path: I2 exactly 1.
    let out = run(&[
        "constants",
        "--d",
        "2",
        "--n-samples",
        "1e4",
        "--seed",
        "5",
        "--out",
        dir.join("d2.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let record: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("d2.json")).unwrap()).unwrap();
    assert_eq!(record["i2"].as_f64().unwrap(), 1.0);
    assert_eq!(record["i3"].as_f64().unwrap(), 1.0);
}

#[test]
fn experiment_config_errors_name_keys_and_exit_2() {
    let dir = tmpdir("exp-errors");
    let conf = dir.join("bad.conf");
    fs::write(&conf, "body = torus\nd = 3\n").unwrap();
    let out = run(&[
        "experiment",
        "--config",
        conf.to_str().unwrap(),
        "--out-dir",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("body"), "{}", stderr_of(&out));

    fs::write(&conf, "bogus_key = 1\n").unwrap();
    let out = run(&[
        "experiment",
        "--config",
        conf.to_str().unwrap(),
        "--out-dir",
        dir.join("out").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("bogus_key"));
}

fn smoke_config(dir: &Path, seed: u64) -> PathBuf {
    let conf = dir.join("smoke.conf");
    fs::write(
        &conf,
        format!(
            "body = ball\nd = 3\nschedule = thermodynamic\nc = 5.0\n\
             t_grid = 60 120\nreps = 3\nseed = {seed}\n"
        ),
    )
    .unwrap();
    conf
}

#[test]
fn experiment_outputs_are_worker_invariant() {
    let dir = tmpdir("exp-workers");
    let conf = smoke_config(&dir, 11);
    let mut csvs = Vec::new();
    for workers in ["1", "8"] {
        let out_dir = dir.join(format!("w{workers}"));
        let res = run(&[
            "experiment",
            "--config",
            conf.to_str().unwrap(),
            "--out-dir",
            out_dir.to_str().unwrap(),
            "--n-samples",
            "1e4",
            "--workers",
            workers,
        ]);
        // Checks may PASS or FAIL on a 3-rep smoke (exit 0 or 1), but the
        // command itself must work.
        assert!(matches!(res.status.code(), Some(0) | Some(1)), "{}", stderr_of(&res));
        csvs.push(fs::read(out_dir.join("experiment.raw.csv")).unwrap());
    }
    assert_eq!(csvs[0], csvs[1], "raw CSV independent of --workers");
}

#[test]
fn experiment_writes_all_artifacts_with_pinned_csv_header() {
    let dir = tmpdir("exp-artifacts");
    let conf = smoke_config(&dir, 23);
    let out_dir = dir.join("out");
    let res = run(&[
        "experiment",
        "--config",
        conf.to_str().unwrap(),
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--n-samples",
        "1e4",
    ]);
    assert!(matches!(res.status.code(), Some(0) | Some(1)));
    let csv = fs::read_to_string(out_dir.join("experiment.raw.csv")).unwrap();
    assert!(csv.starts_with("t,delta,rep,plane_id,n,m,cr,stress\n"));
    assert_eq!(csv.lines().count(), 1 + 2 * 3, "header + reps x t-grid rows");
    for name in ["experiment.summary.json", "experiment.checks.json", "manifest.json"] {
        let text = fs::read_to_string(out_dir.join(name)).unwrap();
        let _: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    }
    let stdout = stdout_of(&res);
    for check in ["lln", "variance_sandwich", "correlation", "cov_scaling"] {
        assert!(stdout.contains(check), "stdout reports {check}");
    }
}

#[test]
fn predict_gives_positive_moments() {
    let out = run(&[
        "predict", "--t", "1e3", "--delta", "0.05", "--d", "3", "--n-samples", "2e4", "--seed", "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    for field in ["E[m]", "E[cr]", "Var[cr]", "E[stress]", "Corr lb"] {
        assert!(text.contains(field), "{text}");
    }
}

#[test]
fn search_handles_d2_and_parse_errors() {
    let dir = tmpdir("search");
    // A 2-d square with both diagonals: exactly one crossing, K ignored.
    let graph = dir.join("square.txt");
    fs::write(
        &graph,
        "2 4 1.5\n0 0\n1 0\n1 1\n0 1\n6\n0 1\n1 2\n2 3\n0 3\n0 2\n1 3\n",
    )
    .unwrap();
    let out_dir = dir.join("out");
    let res = run(&[
        "search",
        "--graph",
        graph.to_str().unwrap(),
        "--k",
        "50",
        "--seed",
        "9",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0), "{}", stderr_of(&res));
    let table = fs::read_to_string(out_dir.join("planes.csv")).unwrap();
    assert_eq!(table.lines().count(), 2, "d=2 ignores K: one plane\n{table}");
    assert!(table.lines().nth(1).unwrap().starts_with("0,1,"), "one crossing");
    let drawing = fs::read_to_string(out_dir.join("best_drawing.txt")).unwrap();
    assert!(drawing.starts_with("2 4 "), "2-d drawing dump");

    // Parse errors carry a line number and exit 2.
    fs::write(&graph, "2 4 1.5\n0 0\nbroken\n0 1\n1 1\n0\n").unwrap();
    let res = run(&[
        "search",
        "--graph",
        graph.to_str().unwrap(),
        "--k",
        "3",
        "--seed",
        "9",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr_of(&res).contains("line 3"), "{}", stderr_of(&res));

    // d < 2 rejected.
    fs::write(&graph, "1 2 0.5\n0\n1\n0\n").unwrap();
    let res = run(&[
        "search",
        "--graph",
        graph.to_str().unwrap(),
        "--k",
        "3",
        "--seed",
        "9",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr_of(&res).contains("at least 2"));
}

#[test]
fn bundled_configs_parse() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    for name in ["configs/ball-d3-thermo.conf", "configs/smoke.conf"] {
        let text = fs::read_to_string(root.join(name)).unwrap();
        rggkit::cli::parse_experiment_configs(&text)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
