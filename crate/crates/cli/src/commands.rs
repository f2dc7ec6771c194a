//! The four commands: profile, simulate, sweep, optimize.
//!
//! Each command prints a short summary to stdout and writes its CSV/JSON
//! artifacts into the output directory. All randomness flows through the
//! seeded optimizer, so identical inputs give byte-identical outputs.

use std::path::{Path, PathBuf};

use serde::Serialize;
use trapzopt_core::{
    optimize_trajectory, segment_breakdown, sweep, JointConfig, ObjectiveReport, SegmentObjective,
    SegmentParams, SweepOutcome, Trajectory, TrapezoidProfile,
};

use crate::config::{load_run, LoadedRun, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{ensure_dir, fmt_float, sample_times, write_csv, write_json};

fn out_dir(config: &RunConfig, override_dir: Option<&Path>) -> PathBuf {
    override_dir
        .map(Path::to_path_buf)
        .or_else(|| config.out_dir.clone())
        .unwrap_or_else(|| PathBuf::from("."))
}

fn reject_out_of_range(run: &LoadedRun) -> CliResult<Vec<JointConfig>> {
    let waypoints = run.waypoint_file.waypoints.clone();
    let report = run.model.limits.validate_waypoints(&waypoints)?;
    if !report.is_empty() {
        let listing: Vec<String> = report.iter().map(|v| v.to_string()).collect();
        return Err(CliError::domain(listing.join("; ")));
    }
    Ok(waypoints)
}

/// `trapzopt profile`: derive the third parameter from two of `(v, a, T)`,
/// print the result, and export the sampled scaling curve.
pub fn cmd_profile(
    v: Option<f64>,
    a: Option<f64>,
    duration: Option<f64>,
    rate_hz: f64,
    dir: &Path,
) -> CliResult<()> {
    let supplied = [v, a, duration].iter().filter(|p| p.is_some()).count();
    if supplied != 2 {
        return Err(CliError::usage(format!(
            "profile needs exactly two of --v, --a, --T; got {supplied}"
        )));
    }
    if !(rate_hz > 0.0) {
        return Err(CliError::usage(format!(
            "sample rate must be positive, got {rate_hz}"
        )));
    }
    let profile = match (v, a, duration) {
        (Some(v), Some(a), None) => TrapezoidProfile::from_velocity_accel(v, a),
        (Some(v), None, Some(t)) => TrapezoidProfile::from_velocity_duration(v, t),
        (None, Some(a), Some(t)) => TrapezoidProfile::from_accel_duration(a, t),
        _ => unreachable!("exactly two parameters checked above"),
    }?;

    ensure_dir(dir)?;
    let rows: Vec<String> = sample_times(profile.duration(), rate_hz)
        .iter()
        .map(|&t| {
            let s = profile.eval(t);
            format!(
                "{},{},{},{}",
                fmt_float(t),
                fmt_float(s.position),
                fmt_float(s.velocity),
                fmt_float(s.acceleration)
            )
        })
        .collect();
    let path = write_csv(dir, "profile.csv", "t,s,sdot,sddot", &rows)?;

    println!("v = {}", profile.peak_velocity());
    println!("a = {}", profile.accel());
    println!("T = {}", profile.duration());
    println!("t_a = {}", profile.ramp_time());
    println!("wrote {}", path.display());
    Ok(())
}

#[derive(Serialize)]
struct SimulateReport {
    #[serde(rename = "S1")]
    energy: f64,
    #[serde(rename = "S2")]
    cycle_time: f64,
    total_time: f64,
    waypoints: usize,
    segments: Vec<SegmentObjective>,
}

/// `trapzopt simulate`: plan the configured trajectory, export per-joint
/// curves, the end-effector path, and the objective inputs.
pub fn cmd_simulate(config_path: &Path, override_dir: Option<&Path>) -> CliResult<()> {
    let run = load_run(config_path)?;
    let waypoints = reject_out_of_range(&run)?;
    let params = run.waypoint_file.params.clone().ok_or_else(|| {
        CliError::usage("waypoint file has no params block; simulate needs [[v, a] x segments]")
    })?;
    let trajectory = Trajectory::plan(&waypoints, &params, &run.model.limits)?;
    let dir = out_dir(&run.config, override_dir);
    ensure_dir(&dir)?;

    let times = sample_times(trajectory.total_time(), run.config.sample_rate_hz);
    let joint_rows: Vec<String> = times
        .iter()
        .map(|&t| {
            let s = trajectory.sample(t);
            let mut row = fmt_float(t);
            for q in s.position.angles() {
                row.push(',');
                row.push_str(&fmt_float(*q));
            }
            for qd in &s.velocity {
                row.push(',');
                row.push_str(&fmt_float(*qd));
            }
            for qdd in &s.acceleration {
                row.push(',');
                row.push_str(&fmt_float(*qdd));
            }
            row
        })
        .collect();
    let joint_header = "t,q1,q2,q3,q4,q5,q6,qd1,qd2,qd3,qd4,qd5,qd6,qdd1,qdd2,qdd3,qdd4,qdd5,qdd6";
    let trajectory_csv = write_csv(&dir, "trajectory.csv", joint_header, &joint_rows)?;

    let path_rows: Vec<String> = times
        .iter()
        .map(|&t| {
            let pose = run.model.kinematics.forward(&trajectory.sample(t).position);
            format!(
                "{},{},{},{}",
                fmt_float(t),
                fmt_float(pose.position.x),
                fmt_float(pose.position.y),
                fmt_float(pose.position.z)
            )
        })
        .collect();
    let path_csv = write_csv(&dir, "path.csv", "t,x,y,z", &path_rows)?;

    let report = SimulateReport {
        energy: trapzopt_core::energy(&trajectory),
        cycle_time: trapzopt_core::cycle_time(&trajectory),
        total_time: trajectory.total_time(),
        waypoints: trajectory.waypoint_count(),
        segments: segment_breakdown(&trajectory),
    };
    let report_json = write_json(&dir, "report.json", &report)?;

    println!("S1 = {}", report.energy);
    println!("S2 = {}", report.cycle_time);
    println!(
        "wrote {}, {}, {}",
        trajectory_csv.display(),
        path_csv.display(),
        report_json.display()
    );
    Ok(())
}

#[derive(Serialize)]
struct SweepSummary {
    ff_best: f64,
    ff_average: f64,
    ff_worst: f64,
    #[serde(rename = "F_worst")]
    improvement_worst: f64,
    #[serde(rename = "F_average")]
    improvement_average: f64,
    best: BestRow,
    rows: usize,
    feasible_rows: usize,
    normalization: &'static str,
    end_effector_velocity: String,
    accel_rule: String,
}

#[derive(Serialize)]
struct BestRow {
    v: f64,
    end_effector_v: f64,
    #[serde(rename = "S1")]
    energy: f64,
    #[serde(rename = "S2")]
    cycle_time: f64,
    ff: f64,
}

fn sweep_csv_rows(outcome: &SweepOutcome) -> Vec<String> {
    outcome
        .rows
        .iter()
        .map(|r| {
            format!(
                "{},{},{},{},{},{},{},{}",
                fmt_float(r.velocity),
                fmt_float(r.end_effector_velocity),
                fmt_float(r.energy),
                fmt_float(r.cycle_time),
                fmt_float(r.energy_norm),
                fmt_float(r.cycle_time_norm),
                fmt_float(r.fitness),
                r.feasible
            )
        })
        .collect()
}

/// `trapzopt sweep`: score a velocity grid and report the trade-off table.
pub fn cmd_sweep(config_path: &Path, override_dir: Option<&Path>) -> CliResult<()> {
    let run = load_run(config_path)?;
    let block = run
        .config
        .sweep
        .clone()
        .ok_or_else(|| CliError::usage("config has no sweep block"))?;
    let waypoints = reject_out_of_range(&run)?;
    let grid = block.grid()?;
    let rule = block.accel_rule()?;
    let outcome = sweep(&run.model, &waypoints, &grid, rule)?;

    let dir = out_dir(&run.config, override_dir);
    ensure_dir(&dir)?;
    let sweep_csv = write_csv(
        &dir,
        "sweep.csv",
        "v,end_effector_v,S1,S2,S1_norm,S2_norm,ff,feasible",
        &sweep_csv_rows(&outcome),
    )?;

    let best = &outcome.rows[outcome.best];
    let summary = SweepSummary {
        ff_best: outcome.fitness_best,
        ff_average: outcome.fitness_average,
        ff_worst: outcome.fitness_worst,
        improvement_worst: outcome.improvement_worst,
        improvement_average: outcome.improvement_average,
        best: BestRow {
            v: best.velocity,
            end_effector_v: best.end_effector_velocity,
            energy: best.energy,
            cycle_time: best.cycle_time,
            ff: best.fitness,
        },
        rows: outcome.rows.len(),
        feasible_rows: outcome.rows.iter().filter(|r| r.feasible).count(),
        normalization: "min-max over the feasible sweep rows",
        end_effector_velocity: format!(
            "peak path velocity times the mean Cartesian chord between consecutive waypoint \
             poses (mean chord = {} m)",
            fmt_float(outcome.mean_chord)
        ),
        accel_rule: match rule {
            trapzopt_core::AccelRule::Fixed(a) => format!("fixed a = {a}"),
            trapzopt_core::AccelRule::ProportionalToVelocity(c) => format!("a = {c} * v"),
        },
    };
    let summary_json = write_json(&dir, "summary.json", &summary)?;

    println!(
        "best v = {} (end-effector {})",
        best.velocity, best.end_effector_velocity
    );
    println!(
        "ff best/average/worst = {} / {} / {}",
        summary.ff_best, summary.ff_average, summary.ff_worst
    );
    println!(
        "F_worst = {:.2}%  F_average = {:.2}%",
        summary.improvement_worst, summary.improvement_average
    );
    println!("wrote {}, {}", sweep_csv.display(), summary_json.display());
    Ok(())
}

#[derive(Serialize)]
struct OptimizeReport {
    fitness: f64,
    params: Vec<SegmentParams>,
    objective: ObjectiveReport,
    reference: ReferenceBlock,
    audit: trapzopt_core::optimizer::AuditSummary,
    iterations: usize,
    stalled: bool,
    seed: u64,
}

#[derive(Serialize)]
struct ReferenceBlock {
    #[serde(flatten)]
    point: trapzopt_core::optimizer::ReferencePoint,
    normalization: &'static str,
}

#[derive(Serialize)]
struct BestParams {
    params: Vec<SegmentParams>,
    fitness: f64,
}

/// `trapzopt optimize`: swarm-search per-segment `(v, a)` and report the
/// best parameters, the convergence curve, and the audit-grid comparison.
pub fn cmd_optimize(
    config_path: &Path,
    override_dir: Option<&Path>,
    seed_override: Option<u64>,
) -> CliResult<()> {
    let run = load_run(config_path)?;
    let block = run
        .config
        .pso
        .clone()
        .ok_or_else(|| CliError::usage("config has no pso block"))?;
    let waypoints = reject_out_of_range(&run)?;
    let cfg = block.to_pso_config(waypoints.len() - 1, seed_override);
    let outcome = optimize_trajectory(&waypoints, &run.model.limits, &cfg)?;

    let dir = out_dir(&run.config, override_dir);
    ensure_dir(&dir)?;
    let convergence_rows: Vec<String> = outcome
        .history
        .iter()
        .enumerate()
        .map(|(i, f)| format!("{i},{}", fmt_float(*f)))
        .collect();
    let convergence_csv = write_csv(&dir, "convergence.csv", "iter,gbest_f", &convergence_rows)?;

    let best_params = write_json(
        &dir,
        "best_params.json",
        &BestParams {
            params: outcome.params.clone(),
            fitness: outcome.fitness,
        },
    )?;

    let report = OptimizeReport {
        fitness: outcome.fitness,
        params: outcome.params.clone(),
        objective: outcome.report.clone(),
        reference: ReferenceBlock {
            point: outcome.reference.clone(),
            normalization: "objectives at the repaired midpoint of the search box",
        },
        audit: outcome.audit,
        iterations: outcome.iterations,
        stalled: outcome.stalled,
        seed: cfg.seed,
    };
    let report_json = write_json(&dir, "report.json", &report)?;

    println!("best fitness = {}", outcome.fitness);
    for (i, p) in outcome.params.iter().enumerate() {
        println!("segment {}: v = {}, a = {}", i + 1, p.velocity, p.accel);
    }
    println!(
        "improvement vs audit grid: worst {:.2}%, average {:.2}%",
        outcome.audit.improvement_vs_worst, outcome.audit.improvement_vs_average
    );
    println!(
        "wrote {}, {}, {}",
        convergence_csv.display(),
        best_params.display(),
        report_json.display()
    );
    Ok(())
}
