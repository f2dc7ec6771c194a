//! Run-config file: robot and waypoint file references plus per-command
//! blocks. Relative file references resolve against the config's directory
//! so a config can travel with its data.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use trapzopt_core::{AccelRule, PsoConfig, RobotModel, WaypointFile};

use crate::error::{io_error, CliError, CliResult};

pub const DEFAULT_SAMPLE_RATE_HZ: f64 = 500.0;
pub const DEFAULT_V_BOUNDS: [f64; 2] = [0.2, 2.0];
pub const DEFAULT_A_BOUNDS: [f64; 2] = [0.5, 4.0];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub robot: PathBuf,
    pub waypoints: PathBuf,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
    #[serde(default = "default_sample_rate")]
    pub sample_rate_hz: f64,
    #[serde(default)]
    pub sweep: Option<SweepBlock>,
    #[serde(default)]
    pub pso: Option<PsoBlock>,
}

fn default_sample_rate() -> f64 {
    DEFAULT_SAMPLE_RATE_HZ
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepBlock {
    pub v_min: f64,
    pub v_max: f64,
    pub count: usize,
    /// Fixed path acceleration for every grid row.
    #[serde(default)]
    pub a: Option<f64>,
    /// Lock the acceleration to `a = c * v` instead.
    #[serde(default)]
    pub a_per_v: Option<f64>,
}

impl SweepBlock {
    /// Grid-size and feasibility policing belongs to the sweep itself (it
    /// decides what counts as enough feasible rows); the block only rejects
    /// structurally meaningless ranges.
    pub fn grid(&self) -> CliResult<Vec<f64>> {
        if !(self.v_min > 0.0) || !(self.v_max >= self.v_min) {
            return Err(CliError::usage(format!(
                "sweep block needs 0 < v_min <= v_max, got v_min = {}, v_max = {}",
                self.v_min, self.v_max
            )));
        }
        Ok(trapzopt_core::linspace(self.v_min, self.v_max, self.count))
    }

    pub fn accel_rule(&self) -> CliResult<AccelRule> {
        match (self.a, self.a_per_v) {
            (Some(_), Some(_)) => Err(CliError::usage(
                "sweep block sets both a and a_per_v; pick one",
            )),
            (Some(a), None) => Ok(AccelRule::Fixed(a)),
            (None, Some(c)) => Ok(AccelRule::ProportionalToVelocity(c)),
            (None, None) => Ok(AccelRule::default_fixed(self.v_max)),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsoBlock {
    #[serde(default = "d_swarm_size")]
    pub swarm_size: usize,
    #[serde(default = "d_max_iters")]
    pub max_iters: usize,
    #[serde(default = "d_inertia")]
    pub w: f64,
    #[serde(default = "d_coefficient")]
    pub c1: f64,
    #[serde(default = "d_coefficient")]
    pub c2: f64,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default = "d_stall_iters")]
    pub stall_iters: usize,
    #[serde(default = "d_stall_tol")]
    pub stall_tol: f64,
    #[serde(default = "d_bounds")]
    pub bounds: BoundsBlock,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsBlock {
    pub v: [f64; 2],
    pub a: [f64; 2],
}

fn d_swarm_size() -> usize {
    PsoConfig::default().swarm_size
}
fn d_max_iters() -> usize {
    PsoConfig::default().max_iters
}
fn d_inertia() -> f64 {
    PsoConfig::default().inertia
}
fn d_coefficient() -> f64 {
    PsoConfig::default().cognitive
}
fn d_stall_iters() -> usize {
    PsoConfig::default().stall_iters
}
fn d_stall_tol() -> f64 {
    PsoConfig::default().stall_tol
}
fn d_bounds() -> BoundsBlock {
    BoundsBlock {
        v: DEFAULT_V_BOUNDS,
        a: DEFAULT_A_BOUNDS,
    }
}

impl PsoBlock {
    /// Expands the block into a full swarm config for an `n`-segment
    /// problem. `--seed` beats the config seed; with neither, seed 0 keeps
    /// runs deterministic by default.
    pub fn to_pso_config(&self, segments: usize, seed_override: Option<u64>) -> PsoConfig {
        PsoConfig {
            swarm_size: self.swarm_size,
            max_iters: self.max_iters,
            inertia: self.w,
            cognitive: self.c1,
            social: self.c2,
            bounds: trapzopt_core::tile_bounds(
                (self.bounds.v[0], self.bounds.v[1]),
                (self.bounds.a[0], self.bounds.a[1]),
                segments,
            ),
            seed: seed_override.or(self.seed).unwrap_or(0),
            stall_iters: self.stall_iters,
            stall_tol: self.stall_tol,
        }
    }
}

/// A fully loaded run: parsed config plus the files it references.
pub struct LoadedRun {
    pub config: RunConfig,
    pub model: RobotModel,
    pub waypoint_file: WaypointFile,
}

pub fn load_run(config_path: &Path) -> CliResult<LoadedRun> {
    let text = fs::read_to_string(config_path).map_err(|e| io_error(config_path, e))?;
    let config: RunConfig = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{}: {e}", config_path.display())))?;
    if !(config.sample_rate_hz > 0.0) {
        return Err(CliError::usage(format!(
            "sample_rate_hz must be positive, got {}",
            config.sample_rate_hz
        )));
    }

    let base = config_path.parent().unwrap_or_else(|| Path::new("."));
    let robot_path = resolve(base, &config.robot);
    let robot_text = fs::read_to_string(&robot_path).map_err(|e| io_error(&robot_path, e))?;
    let model = RobotModel::from_json(&robot_text)?;

    let waypoints_path = resolve(base, &config.waypoints);
    let waypoints_text =
        fs::read_to_string(&waypoints_path).map_err(|e| io_error(&waypoints_path, e))?;
    let waypoint_file = WaypointFile::from_json(&waypoints_text)?;

    Ok(LoadedRun {
        config,
        model,
        waypoint_file,
    })
}

fn resolve(base: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base.join(path)
    }
}
