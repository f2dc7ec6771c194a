//! End-to-end checks of the binary: exit-code discipline, file outputs,
//! stdout contracts, and robustness against malformed inputs.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn trapzopt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trapzopt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn profile_prints_the_derived_duration() {
    let dir = tempfile::tempdir().unwrap();
    let out = trapzopt(&[
        "profile",
        "--v",
        "1.2",
        "--a",
        "1.8",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let stdout = stdout_of(&out);
    assert!(stdout.contains("T = 1.5"), "stdout: {stdout}");
    assert!(stdout.contains("t_a = 0.666666"), "stdout: {stdout}");

    let csv = fs::read_to_string(dir.path().join("profile.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "t,s,sdot,sddot");
    let last = csv.lines().last().unwrap();
    assert!(
        last.starts_with("1.50000000e0,1.00000000e0,"),
        "last row: {last}"
    );
}

#[test]
fn profile_rejects_infeasible_pair_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = trapzopt(&[
        "profile",
        "--v",
        "0.5",
        "--T",
        "1.5",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = stderr_of(&out);
    assert!(
        stderr.contains("v*T > 1"),
        "stderr must cite the constraint: {stderr}"
    );
}

#[test]
fn profile_rejects_overspecified_arguments_with_exit_64() {
    let out = trapzopt(&["profile", "--v", "1", "--a", "1", "--T", "2"]);
    assert_eq!(out.status.code(), Some(64));
    let out = trapzopt(&["profile", "--v", "1"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn unknown_flags_exit_64() {
    let out = trapzopt(&["profile", "--frobnicate", "1"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn bare_invocation_exits_64_and_help_exits_0() {
    let out = trapzopt(&[]);
    assert_eq!(out.status.code(), Some(64));
    let out = trapzopt(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("Usage: trapzopt"));
}

fn write_config(dir: &Path, waypoints_json: &str, extra: &str) -> PathBuf {
    let robot = data_file("ur5.json").canonicalize().unwrap();
    let waypoints_path = dir.join("waypoints.json");
    fs::write(&waypoints_path, waypoints_json).unwrap();
    let config_path = dir.join("config.json");
    fs::write(
        &config_path,
        format!(
            r#"{{"robot": "{}", "waypoints": "waypoints.json"{extra}}}"#,
            robot.display()
        ),
    )
    .unwrap();
    config_path
}

#[test]
fn simulate_two_waypoints_reports_the_profile_duration() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{"waypoints": [[0,0,0,0,0,0],[1,0,0,0,0,0]], "params": [[1.2, 1.8]]}"#,
        "",
    );
    let out = trapzopt(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));

    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    // One segment with (v, a) = (1.2, 1.8): S2 equals the profile duration 1.5.
    assert!((report["S2"].as_f64().unwrap() - 1.5).abs() < 1e-12);
    assert!((report["S1"].as_f64().unwrap() - 6.48f64.sqrt()).abs() < 1e-9);

    let trajectory_csv = fs::read_to_string(dir.path().join("trajectory.csv")).unwrap();
    assert!(trajectory_csv.starts_with("t,q1,q2,q3,q4,q5,q6,qd1,"));
    let path_csv = fs::read_to_string(dir.path().join("path.csv")).unwrap();
    assert!(path_csv.starts_with("t,x,y,z"));
}

#[test]
fn simulate_rejects_limit_violations_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    // Joint 1 sweeps 4 rad at v = 1.2: peak 4.8 rad/s exceeds pi.
    let config = write_config(
        dir.path(),
        r#"{"waypoints": [[0,0,0,0,0,0],[4,0,0,0,0,0]], "params": [[1.2, 1.5]]}"#,
        "",
    );
    let out = trapzopt(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = stderr_of(&out);
    assert!(stderr.contains("segment 1"), "stderr: {stderr}");
    assert!(stderr.contains("joint 1"), "stderr: {stderr}");
}

#[test]
fn simulate_without_params_exits_64() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{"waypoints": [[0,0,0,0,0,0],[1,0,0,0,0,0]]}"#,
        "",
    );
    let out = trapzopt(&["simulate", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn out_of_range_waypoints_exit_2_naming_the_joint() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{"waypoints": [[0,0,0,0,0,0],[0,0,7.0,0,0,0]], "params": [[1.2, 1.8]]}"#,
        "",
    );
    let out = trapzopt(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("joint 3"));
}

#[test]
fn sweep_demo_config_finds_an_interior_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let out = trapzopt(&[
        "sweep",
        "--config",
        data_file("config_a.json").to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));

    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap())
            .unwrap();
    let best_v = summary["best"]["v"].as_f64().unwrap();
    assert!(
        best_v > 0.05 && best_v < 1.0,
        "best v {best_v} must be interior"
    );

    // The improvement figures must match the summary's own fitness columns.
    let ff_best = summary["ff_best"].as_f64().unwrap();
    let ff_avg = summary["ff_average"].as_f64().unwrap();
    let f_avg = summary["F_average"].as_f64().unwrap();
    assert!((f_avg - 100.0 * (1.0 - ff_best / ff_avg)).abs() < 1e-9);

    let csv = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert!(csv.starts_with("v,end_effector_v,S1,S2,S1_norm,S2_norm,ff,feasible"));
    assert_eq!(csv.lines().count(), 26); // header + 25 rows
}

#[test]
fn sweep_single_row_grid_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{"waypoints": [[0,0,0,0,0,0],[1,0,0,0,0,0]], "params": [[1.2, 1.8]]}"#,
        r#", "sweep": {"v_min": 0.5, "v_max": 0.5, "count": 1, "a": 3.0}"#,
    );
    let out = trapzopt(&["sweep", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr_of(&out));
}

#[test]
fn optimize_seed_flag_changes_the_search() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let config = data_file("config_b.json");
    let run = |dir: &Path, seed: &str| {
        let out = trapzopt(&[
            "optimize",
            "--config",
            config.to_str().unwrap(),
            "--seed",
            seed,
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
        fs::read_to_string(dir.join("convergence.csv")).unwrap()
    };
    let with_seed_1 = run(dir_a.path(), "1");
    let with_seed_2 = run(dir_b.path(), "2");
    assert_ne!(with_seed_1, with_seed_2);
}

#[test]
fn optimize_report_is_consistent_with_best_params() {
    let dir = tempfile::tempdir().unwrap();
    let out = trapzopt(&[
        "optimize",
        "--config",
        data_file("config_b.json").to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    let best: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("best_params.json")).unwrap())
            .unwrap();
    assert_eq!(report["params"], best["params"]);
    assert_eq!(report["fitness"], best["fitness"]);
    // The swarm's best must not lose to any audit-grid point.
    let audit_best = report["audit"]["fitness_best"].as_f64().unwrap();
    let fitness = report["fitness"].as_f64().unwrap();
    assert!(fitness <= audit_best + 1e-12);
}

#[test]
fn missing_files_and_malformed_json_exit_64() {
    let out = trapzopt(&["optimize", "--config", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(64));

    let dir = tempfile::tempdir().unwrap();
    // Config referencing a robot file that does not exist.
    let waypoints_path = dir.path().join("waypoints.json");
    fs::write(
        &waypoints_path,
        r#"{"waypoints": [[0,0,0,0,0,0],[1,0,0,0,0,0]]}"#,
    )
    .unwrap();
    let config_path = dir.path().join("config.json");
    fs::write(
        &config_path,
        r#"{"robot": "missing_robot.json", "waypoints": "waypoints.json", "pso": {"bounds": {"v": [0.2, 2.0], "a": [0.5, 4.0]}}}"#,
    )
    .unwrap();
    let out = trapzopt(&["optimize", "--config", config_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));

    // Malformed JSON must not panic.
    fs::write(&config_path, "{not json").unwrap();
    let out = trapzopt(&["simulate", "--config", config_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    assert!(!stderr_of(&out).contains("panicked"));
}

#[test]
fn missing_pso_block_exits_64() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{"waypoints": [[0,0,0,0,0,0],[1,0,0,0,0,0]], "params": [[1.2, 1.8]]}"#,
        "",
    );
    let out = trapzopt(&["optimize", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    assert!(stderr_of(&out).contains("pso"));
}
