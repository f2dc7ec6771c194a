//! Objective functions and the velocity sweep.
//!
//! Two competing objectives score a trajectory: `S1`, the sum over segments
//! and joints of RMS joint acceleration times segment duration (a proxy for
//! actuator energy), and `S2`, the total cycle time. The fitness is the
//! equal-weight mean of the two after normalization, and the improvement
//! percentage compares a candidate fitness against the best one.
//!
//! `S1` has a closed form. With every joint scaled by the same trapezoid,
//! the per-joint RMS term is `sqrt(dq^2 * 2av / T) * T = |dq| * sqrt(2avT)`,
//! so a segment contributes `sum_m |dq_m| * sqrt(2avT)`. Tests hold this
//! against direct quadrature of the sampled acceleration curves.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::robot_model::{JointConfig, RobotModel};
use crate::trajectory::{SegmentParams, Trajectory};

/// Energy objective `S1` (closed form).
pub fn energy(trajectory: &Trajectory) -> f64 {
    trajectory.segments().iter().map(segment_energy).sum()
}

fn segment_energy(segment: &crate::trajectory::Segment) -> f64 {
    let p = segment.profile();
    let per_unit = (2.0 * p.accel() * p.peak_velocity() * p.duration()).sqrt();
    segment.delta().iter().map(|dq| dq.abs() * per_unit).sum()
}

/// Cycle time `S2`: the sum of segment durations, identical to the last
/// boundary time by telescoping.
pub fn cycle_time(trajectory: &Trajectory) -> f64 {
    trajectory.total_time()
}

/// Equal-weight fitness over two normalized objectives.
pub fn fitness(energy_norm: f64, cycle_time_norm: f64) -> f64 {
    0.5 * (energy_norm + cycle_time_norm)
}

/// How raw objective columns become unitless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Normalization {
    /// `(x - min) / (max - min)`, mapping the column onto [0, 1].
    MinMax,
    /// `x / x_ref` against a fixed positive reference.
    Reference(f64),
}

pub fn normalize(values: &[f64], method: Normalization) -> Result<Vec<f64>> {
    match method {
        Normalization::MinMax => {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for &x in values {
                lo = lo.min(x);
                hi = hi.max(x);
            }
            if values.is_empty() || !(hi > lo) {
                return Err(Error::DegenerateRange);
            }
            Ok(values.iter().map(|x| (x - lo) / (hi - lo)).collect())
        }
        Normalization::Reference(x_ref) => {
            if !(x_ref > 0.0) {
                return Err(Error::DegenerateRange);
            }
            Ok(values.iter().map(|x| x / x_ref).collect())
        }
    }
}

/// Improvement percentage of a candidate fitness over the best one:
/// `100 * (1 - best / candidate)`. Both inputs must be positive and the
/// best must not exceed the candidate.
pub fn improvement(candidate: f64, best: f64) -> Result<f64> {
    if !(candidate > 0.0) || !(best > 0.0) || best > candidate {
        return Err(Error::InvalidImprovement { candidate, best });
    }
    Ok(100.0 * (1.0 - best / candidate))
}

/// Scores for one trajectory under a fixed normalization context.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObjectiveReport {
    #[serde(rename = "S1")]
    pub energy: f64,
    #[serde(rename = "S2")]
    pub cycle_time: f64,
    #[serde(rename = "S1_norm")]
    pub energy_norm: f64,
    #[serde(rename = "S2_norm")]
    pub cycle_time_norm: f64,
    #[serde(rename = "ff")]
    pub fitness: f64,
    pub segments: Vec<SegmentObjective>,
}

/// Per-segment breakdown; `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SegmentObjective {
    pub index: usize,
    #[serde(rename = "v")]
    pub velocity: f64,
    #[serde(rename = "a")]
    pub accel: f64,
    pub duration: f64,
    pub energy: f64,
}

impl ObjectiveReport {
    /// Scores a trajectory with reference normalization against positive
    /// reference values for both objectives.
    pub fn with_reference(
        trajectory: &Trajectory,
        energy_ref: f64,
        cycle_ref: f64,
    ) -> Result<Self> {
        if !(energy_ref > 0.0) || !(cycle_ref > 0.0) {
            return Err(Error::DegenerateRange);
        }
        let s1 = energy(trajectory);
        let s2 = cycle_time(trajectory);
        let s1n = s1 / energy_ref;
        let s2n = s2 / cycle_ref;
        Ok(Self {
            energy: s1,
            cycle_time: s2,
            energy_norm: s1n,
            cycle_time_norm: s2n,
            fitness: fitness(s1n, s2n),
            segments: segment_breakdown(trajectory),
        })
    }
}

/// Per-segment durations and energies, 1-based indexing.
pub fn segment_breakdown(trajectory: &Trajectory) -> Vec<SegmentObjective> {
    trajectory
        .segments()
        .iter()
        .enumerate()
        .map(|(i, seg)| SegmentObjective {
            index: i + 1,
            velocity: seg.profile().peak_velocity(),
            accel: seg.profile().accel(),
            duration: seg.duration(),
            energy: segment_energy(seg),
        })
        .collect()
}

/// How the sweep picks an acceleration for each grid velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AccelRule {
    Fixed(f64),
    /// `a = c * v` with a configurable factor.
    ProportionalToVelocity(f64),
}

impl AccelRule {
    pub fn accel_for(&self, v: f64) -> f64 {
        match *self {
            AccelRule::Fixed(a) => a,
            AccelRule::ProportionalToVelocity(c) => c * v,
        }
    }

    /// Default sweep rule: a fixed acceleration of three times the bound
    /// implied by the largest grid velocity (`v^2/a <= 1` needs
    /// `a >= v_max^2`), so every grid point stays well inside feasibility.
    pub fn default_fixed(v_grid_max: f64) -> Self {
        AccelRule::Fixed(3.0 * v_grid_max * v_grid_max)
    }
}

/// One sweep grid row. Infeasible rows keep their `v` but carry NaN scores
/// and are excluded from normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub velocity: f64,
    pub end_effector_velocity: f64,
    pub energy: f64,
    pub cycle_time: f64,
    pub energy_norm: f64,
    pub cycle_time_norm: f64,
    pub fitness: f64,
    pub feasible: bool,
}

/// Full sweep result with Table-1-style aggregates.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    /// Index of the feasible row with the lowest fitness.
    pub best: usize,
    pub fitness_best: f64,
    pub fitness_average: f64,
    pub fitness_worst: f64,
    pub improvement_worst: f64,
    pub improvement_average: f64,
    /// Mean Cartesian chord length between consecutive waypoint poses; the
    /// end-effector velocity column is `v * mean_chord`.
    pub mean_chord: f64,
}

/// Minimum feasible rows a sweep needs for a meaningful normalization.
pub const MIN_FEASIBLE_ROWS: usize = 3;

/// Plans the trajectory once per grid velocity (same `(v, a)` on every
/// segment), scores each row, then min-max normalizes over the feasible
/// rows. Rows are independent and evaluated concurrently; the result does
/// not depend on evaluation order.
pub fn sweep(
    model: &RobotModel,
    waypoints: &[JointConfig],
    v_grid: &[f64],
    rule: AccelRule,
) -> Result<SweepOutcome> {
    if waypoints.len() < 2 {
        return Err(Error::EmptyTrajectory(waypoints.len()));
    }
    if v_grid.len() < MIN_FEASIBLE_ROWS {
        return Err(Error::InsufficientSweep {
            feasible: v_grid.len(),
            required: MIN_FEASIBLE_ROWS,
        });
    }

    let chords: Vec<f64> = waypoints
        .windows(2)
        .map(|pair| model.kinematics.chord_length(&pair[0], &pair[1]))
        .collect();
    let mean_chord = chords.iter().sum::<f64>() / chords.len() as f64;

    let segments = waypoints.len() - 1;
    let raw: Vec<(f64, Option<(f64, f64)>)> = v_grid
        .par_iter()
        .map(|&v| {
            let params = vec![SegmentParams::new(v, rule.accel_for(v)); segments];
            let scores = Trajectory::plan(waypoints, &params, &model.limits)
                .map(|traj| (energy(&traj), cycle_time(&traj)))
                .ok();
            (v, scores)
        })
        .collect();

    let feasible: Vec<usize> = (0..raw.len()).filter(|&i| raw[i].1.is_some()).collect();
    if feasible.len() < MIN_FEASIBLE_ROWS {
        return Err(Error::InsufficientSweep {
            feasible: feasible.len(),
            required: MIN_FEASIBLE_ROWS,
        });
    }

    let s1_col: Vec<f64> = feasible.iter().map(|&i| raw[i].1.unwrap().0).collect();
    let s2_col: Vec<f64> = feasible.iter().map(|&i| raw[i].1.unwrap().1).collect();
    let s1_norm = normalize(&s1_col, Normalization::MinMax)?;
    let s2_norm = normalize(&s2_col, Normalization::MinMax)?;

    let mut rows: Vec<SweepRow> = raw
        .iter()
        .map(|&(v, _)| SweepRow {
            velocity: v,
            end_effector_velocity: v * mean_chord,
            energy: f64::NAN,
            cycle_time: f64::NAN,
            energy_norm: f64::NAN,
            cycle_time_norm: f64::NAN,
            fitness: f64::NAN,
            feasible: false,
        })
        .collect();
    for (k, &i) in feasible.iter().enumerate() {
        rows[i].energy = s1_col[k];
        rows[i].cycle_time = s2_col[k];
        rows[i].energy_norm = s1_norm[k];
        rows[i].cycle_time_norm = s2_norm[k];
        rows[i].fitness = fitness(s1_norm[k], s2_norm[k]);
        rows[i].feasible = true;
    }

    let best = feasible
        .iter()
        .copied()
        .min_by(|&a, &b| rows[a].fitness.total_cmp(&rows[b].fitness))
        .unwrap();
    let fitness_best = rows[best].fitness;
    let fitness_worst = feasible
        .iter()
        .map(|&i| rows[i].fitness)
        .fold(f64::NEG_INFINITY, f64::max);
    let fitness_average =
        feasible.iter().map(|&i| rows[i].fitness).sum::<f64>() / feasible.len() as f64;

    Ok(SweepOutcome {
        improvement_worst: improvement(fitness_worst, fitness_best)?,
        improvement_average: improvement(fitness_average, fitness_best)?,
        rows,
        best,
        fitness_best,
        fitness_average,
        fitness_worst,
        mean_chord,
    })
}

/// `n` evenly spaced values covering `[lo, hi]` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}
