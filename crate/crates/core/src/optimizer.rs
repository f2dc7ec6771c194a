//! Inertia-weight particle swarm optimization over per-segment motion
//! parameters.
//!
//! Velocity update per particle and dimension:
//!
//! ```text
//! vel <- w * vel + c1 * r1 * (pbest - x) + c2 * r2 * (gbest - x)
//! x   <- clamp(x + vel)
//! ```
//!
//! with `r1, r2` uniform in [0, 1) from a counter-based stream keyed on
//! `(seed, iteration, particle, dimension)`. Evaluation is bulk-synchronous:
//! all particles move, all are scored (possibly in parallel), then the
//! personal/global bests reduce sequentially in index order. Identical
//! `(seed, config, objective)` therefore give identical runs no matter how
//! many threads score the objective.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::objectives::{cycle_time, energy, ObjectiveReport};
use crate::rng::CounterRng;
use crate::robot_model::{JointConfig, JointLimits};
use crate::trajectory::{SegmentParams, Trajectory};

const STREAM_INIT: u64 = 0;
const STREAM_R1: u64 = 1;
const STREAM_R2: u64 = 2;

/// Velocity clamp as a fraction of each dimension's bound width.
const VELOCITY_CLAMP_FRACTION: f64 = 0.5;

/// Audit grid resolution per axis for the optimization report.
pub const AUDIT_GRID_PER_AXIS: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct PsoConfig {
    pub swarm_size: usize,
    pub max_iters: usize,
    /// Inertia weight `w`.
    pub inertia: f64,
    /// Personal-best attraction coefficient `c1`.
    pub cognitive: f64,
    /// Global-best attraction coefficient `c2`.
    pub social: f64,
    /// Per-dimension `(lo, hi)` box. `lo == hi` pins a dimension.
    pub bounds: Vec<(f64, f64)>,
    pub seed: u64,
    /// Early-stop window: stop when the relative gbest improvement over
    /// this many iterations falls below `stall_tol`.
    pub stall_iters: usize,
    pub stall_tol: f64,
}

impl Default for PsoConfig {
    /// Constriction-equivalent hyperparameters; bounds must be supplied.
    fn default() -> Self {
        Self {
            swarm_size: 30,
            max_iters: 200,
            inertia: 0.729,
            cognitive: 1.49445,
            social: 1.49445,
            bounds: Vec::new(),
            seed: 0,
            stall_iters: 30,
            stall_tol: 1e-8,
        }
    }
}

impl PsoConfig {
    pub fn with_bounds(bounds: Vec<(f64, f64)>) -> Self {
        Self {
            bounds,
            ..Self::default()
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if dim == 0 {
            return Err(Error::BadConfig("dimension must be at least 1".into()));
        }
        if self.bounds.len() != dim {
            return Err(Error::BadConfig(format!(
                "expected {dim} bound pairs, got {}",
                self.bounds.len()
            )));
        }
        if self.swarm_size < 2 {
            return Err(Error::BadConfig(format!(
                "swarm_size must be at least 2, got {}",
                self.swarm_size
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::BadConfig("max_iters must be at least 1".into()));
        }
        if !(0.0..1.0).contains(&self.inertia) {
            return Err(Error::BadConfig(format!(
                "inertia weight must lie in [0, 1), got {}",
                self.inertia
            )));
        }
        if !(self.cognitive > 0.0) || !(self.social > 0.0) {
            return Err(Error::BadConfig(format!(
                "acceleration coefficients must be positive, got c1 = {}, c2 = {}",
                self.cognitive, self.social
            )));
        }
        if self.stall_iters == 0 {
            return Err(Error::BadConfig("stall_iters must be at least 1".into()));
        }
        if !(self.stall_tol >= 0.0) || !self.stall_tol.is_finite() {
            return Err(Error::BadConfig(format!(
                "stall_tol must be finite and non-negative, got {}",
                self.stall_tol
            )));
        }
        for (j, &(lo, hi)) in self.bounds.iter().enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(Error::BadConfig(format!(
                    "dimension {j} bounds ({lo}, {hi}) are not a finite interval"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwarmState {
    cfg: PsoConfig,
    dim: usize,
    rng: CounterRng,
    particles: Vec<Particle>,
    best_position: Vec<f64>,
    best_fitness: f64,
    iteration: u64,
    evaluated: bool,
}

fn sanitize(f: f64) -> f64 {
    if f.is_nan() {
        f64::INFINITY
    } else {
        f
    }
}

impl SwarmState {
    /// Seeds positions uniformly inside the bounds with zero velocities;
    /// personal bests start at the initial positions, unevaluated.
    pub fn initialize(cfg: &PsoConfig, dim: usize) -> Result<Self> {
        cfg.validate(dim)?;
        let rng = CounterRng::new(cfg.seed);
        let particles: Vec<Particle> = (0..cfg.swarm_size)
            .map(|p| {
                let position: Vec<f64> = (0..dim)
                    .map(|j| {
                        let (lo, hi) = cfg.bounds[j];
                        rng.uniform_in(lo, hi, STREAM_INIT, 0, p as u64, j as u64)
                    })
                    .collect();
                Particle {
                    velocity: vec![0.0; dim],
                    best_position: position.clone(),
                    best_fitness: f64::INFINITY,
                    position,
                }
            })
            .collect();
        let best_position = particles[0].position.clone();
        Ok(Self {
            cfg: cfg.clone(),
            dim,
            rng,
            particles,
            best_position,
            best_fitness: f64::INFINITY,
            iteration: 0,
            evaluated: false,
        })
    }

    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }

    pub fn best_position(&self) -> &[f64] {
        &self.best_position
    }

    pub fn best_fitness(&self) -> f64 {
        self.best_fitness
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    fn score_all<F>(&self, objective: &F) -> Vec<f64>
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        self.particles
            .par_iter()
            .map(|p| sanitize(objective(&p.position)))
            .collect()
    }

    fn reduce_bests(&mut self, scores: &[f64]) {
        for (particle, &score) in self.particles.iter_mut().zip(scores) {
            if score < particle.best_fitness {
                particle.best_fitness = score;
                particle.best_position.clone_from(&particle.position);
            }
        }
        for particle in &self.particles {
            if particle.best_fitness < self.best_fitness {
                self.best_fitness = particle.best_fitness;
                self.best_position.clone_from(&particle.best_position);
            }
        }
    }

    /// Scores the initial positions once. Idempotent; `step` calls this
    /// lazily so a fresh state can be stepped directly.
    pub fn evaluate_initial<F>(&mut self, objective: &F)
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        if self.evaluated {
            return;
        }
        let scores = self.score_all(objective);
        self.reduce_bests(&scores);
        self.evaluated = true;
    }

    /// One bulk-synchronous swarm update: move every particle, score the
    /// new positions, then update personal and global bests. Objective
    /// failures (NaN) count as +inf fitness rather than aborting the run.
    pub fn step<F>(&mut self, objective: &F)
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        self.evaluate_initial(objective);
        let t = self.iteration + 1;
        let (w, c1, c2) = (self.cfg.inertia, self.cfg.cognitive, self.cfg.social);
        for p in 0..self.particles.len() {
            for j in 0..self.dim {
                let r1 = self.rng.uniform(STREAM_R1, t, p as u64, j as u64);
                let r2 = self.rng.uniform(STREAM_R2, t, p as u64, j as u64);
                let particle = &mut self.particles[p];
                let mut vel = w * particle.velocity[j]
                    + c1 * r1 * (particle.best_position[j] - particle.position[j])
                    + c2 * r2 * (self.best_position[j] - particle.position[j]);
                let (lo, hi) = self.cfg.bounds[j];
                let vel_max = VELOCITY_CLAMP_FRACTION * (hi - lo);
                vel = vel.clamp(-vel_max, vel_max);
                let mut x = particle.position[j] + vel;
                if x <= lo {
                    x = lo;
                    vel = 0.0;
                } else if x >= hi {
                    x = hi;
                    vel = 0.0;
                }
                particle.velocity[j] = vel;
                particle.position[j] = x;
            }
        }
        let scores = self.score_all(objective);
        self.reduce_bests(&scores);
        self.iteration = t;
    }
}

/// Outcome of a full PSO run.
#[derive(Debug, Clone, PartialEq)]
pub struct PsoRun {
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    /// Global best per iteration; entry 0 is the score of the initial
    /// swarm. Nonincreasing by construction.
    pub history: Vec<f64>,
    pub iterations: usize,
    pub stalled: bool,
}

/// Runs the swarm until `max_iters` or until the relative gbest improvement
/// over `stall_iters` iterations drops below `stall_tol`.
pub fn run<F>(cfg: &PsoConfig, dim: usize, objective: F) -> Result<PsoRun>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let mut state = SwarmState::initialize(cfg, dim)?;
    state.evaluate_initial(&objective);
    let mut history = Vec::with_capacity(cfg.max_iters + 1);
    history.push(state.best_fitness());
    let mut stalled = false;
    for _ in 0..cfg.max_iters {
        state.step(&objective);
        history.push(state.best_fitness());
        if history.len() > cfg.stall_iters {
            let before = history[history.len() - 1 - cfg.stall_iters];
            let now = *history.last().unwrap();
            let relative = if !before.is_finite() {
                if now.is_finite() {
                    f64::INFINITY
                } else {
                    0.0
                }
            } else if before == now {
                0.0
            } else {
                (before - now) / before.abs().max(f64::MIN_POSITIVE)
            };
            if relative < cfg.stall_tol {
                stalled = true;
                break;
            }
        }
    }
    Ok(PsoRun {
        best_position: state.best_position().to_vec(),
        best_fitness: state.best_fitness(),
        iterations: state.iteration() as usize,
        history,
        stalled,
    })
}

/// Decision vector layout for trajectory problems: `[v1, a1, v2, a2, ...]`.
/// Feasibility repair projects the acceleration up to `v^2` whenever the
/// requested peak velocity would be unreachable.
pub fn repair_params(raw: &[f64]) -> Vec<SegmentParams> {
    raw.chunks_exact(2)
        .map(|pair| {
            let v = pair[0];
            SegmentParams::new(v, pair[1].max(v * v))
        })
        .collect()
}

/// Tiles one `(v, a)` box across every segment of an `n`-waypoint problem.
pub fn tile_bounds(v: (f64, f64), a: (f64, f64), segments: usize) -> Vec<(f64, f64)> {
    let mut bounds = Vec::with_capacity(2 * segments);
    for _ in 0..segments {
        bounds.push(v);
        bounds.push(a);
    }
    bounds
}

/// The normalization reference: objectives at the (repaired) midpoint of
/// the search box, logged in reports.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ReferencePoint {
    pub params: Vec<SegmentParams>,
    #[serde(rename = "S1")]
    pub energy: f64,
    #[serde(rename = "S2")]
    pub cycle_time: f64,
}

/// How the swarm's best compares against a uniform audit grid over the
/// same box, Table-1 style. Improvements are `100 * (1 - best / x)` and may
/// come out negative if the swarm underperformed the grid.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct AuditSummary {
    pub grid_per_axis: usize,
    pub feasible_points: usize,
    pub fitness_best: f64,
    pub fitness_average: f64,
    pub fitness_worst: f64,
    pub improvement_vs_worst: f64,
    pub improvement_vs_average: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeOutcome {
    /// Feasible per-segment parameters achieving `fitness`.
    pub params: Vec<SegmentParams>,
    pub fitness: f64,
    pub report: ObjectiveReport,
    pub reference: ReferencePoint,
    pub audit: AuditSummary,
    pub history: Vec<f64>,
    pub iterations: usize,
    pub stalled: bool,
}

/// Optimizes per-segment `(v, a)` for a waypoint list. The decision vector
/// has two entries per segment; `cfg.bounds` must alternate velocity and
/// acceleration boxes accordingly (`tile_bounds` builds the common case).
pub fn optimize_trajectory(
    waypoints: &[JointConfig],
    limits: &JointLimits,
    cfg: &PsoConfig,
) -> Result<OptimizeOutcome> {
    if waypoints.len() < 2 {
        return Err(Error::EmptyTrajectory(waypoints.len()));
    }
    let segments = waypoints.len() - 1;
    let dim = 2 * segments;
    cfg.validate(dim)?;
    for k in 0..segments {
        let (v_lo, _) = cfg.bounds[2 * k];
        let (a_lo, _) = cfg.bounds[2 * k + 1];
        if !(v_lo > 0.0) || !(a_lo > 0.0) {
            return Err(Error::BadConfig(format!(
                "segment {} bounds must be strictly positive (v_lo = {v_lo}, a_lo = {a_lo})",
                k + 1
            )));
        }
    }

    // Reference normalization: objectives at the repaired midpoint of the
    // box. Joint limits are irrelevant here; the reference is only a scale.
    let midpoint: Vec<f64> = cfg.bounds.iter().map(|&(lo, hi)| 0.5 * (lo + hi)).collect();
    let reference_params = repair_params(&midpoint);
    let reference_traj = Trajectory::plan_unchecked(waypoints, &reference_params)?;
    let energy_ref = energy(&reference_traj);
    let cycle_ref = cycle_time(&reference_traj);

    let objective = move |x: &[f64]| -> f64 {
        let params = repair_params(x);
        match Trajectory::plan(waypoints, &params, limits) {
            Ok(traj) => 0.5 * (energy(&traj) / energy_ref + cycle_time(&traj) / cycle_ref),
            Err(_) => f64::INFINITY,
        }
    };

    let outcome = run(cfg, dim, objective)?;
    if !outcome.best_fitness.is_finite() {
        return Err(Error::NoFeasiblePoint);
    }

    let params = repair_params(&outcome.best_position);
    let trajectory = Trajectory::plan(waypoints, &params, limits)?;
    let report = ObjectiveReport::with_reference(&trajectory, energy_ref, cycle_ref)?;
    let audit = audit_grid(&objective, &cfg.bounds, outcome.best_fitness);

    Ok(OptimizeOutcome {
        params,
        fitness: outcome.best_fitness,
        report,
        reference: ReferencePoint {
            params: reference_params,
            energy: energy_ref,
            cycle_time: cycle_ref,
        },
        audit,
        history: outcome.history,
        iterations: outcome.iterations,
        stalled: outcome.stalled,
    })
}

/// Scores a uniform grid over the box, applying the same fraction to every
/// segment's velocity and acceleration range.
fn audit_grid<F>(objective: &F, bounds: &[(f64, f64)], best_fitness: f64) -> AuditSummary
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let n = AUDIT_GRID_PER_AXIS;
    let fractions: Vec<(f64, f64)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (i as f64 / (n - 1) as f64, j as f64 / (n - 1) as f64))
        .collect();
    let scores: Vec<f64> = fractions
        .par_iter()
        .map(|&(fv, fa)| {
            let x: Vec<f64> = bounds
                .iter()
                .enumerate()
                .map(|(d, &(lo, hi))| lo + (hi - lo) * if d % 2 == 0 { fv } else { fa })
                .collect();
            objective(&x)
        })
        .collect();

    let feasible: Vec<f64> = scores.into_iter().filter(|f| f.is_finite()).collect();
    if feasible.is_empty() {
        return AuditSummary {
            grid_per_axis: n,
            feasible_points: 0,
            fitness_best: f64::NAN,
            fitness_average: f64::NAN,
            fitness_worst: f64::NAN,
            improvement_vs_worst: f64::NAN,
            improvement_vs_average: f64::NAN,
        };
    }
    let best = feasible.iter().copied().fold(f64::INFINITY, f64::min);
    let worst = feasible.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let average = feasible.iter().sum::<f64>() / feasible.len() as f64;
    AuditSummary {
        grid_per_axis: n,
        feasible_points: feasible.len(),
        fitness_best: best,
        fitness_average: average,
        fitness_worst: worst,
        improvement_vs_worst: 100.0 * (1.0 - best_fitness / worst),
        improvement_vs_average: 100.0 * (1.0 - best_fitness / average),
    }
}
