//! Point-to-point manipulator trajectories under trapezoidal time scaling,
//! scored by acceleration-based energy and cycle time, with particle swarm
//! search over per-segment speed/acceleration parameters.
//!
//! The crate splits into five layers:
//!
//! * [`time_scaling`] — normalized trapezoidal profiles and their
//!   feasibility constraints
//! * [`robot_model`] — the 6-DoF arm description (joint limits, DH table,
//!   forward kinematics)
//! * [`trajectory`] — MoveJ segments and multi-waypoint trajectories
//! * [`objectives`] — energy, cycle time, fitness, normalization,
//!   improvement, and the velocity sweep
//! * [`optimizer`] — deterministic inertia-weight PSO and the trajectory
//!   parameter search built on it
//!
//! Everything is immutable after construction and evaluation is pure, so
//! all types are safe to share across threads.

// Negated float comparisons are deliberate: they reject NaN along with
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod objectives;
pub mod optimizer;
pub mod rng;
pub mod robot_model;
pub mod time_scaling;
pub mod trajectory;

pub use error::{Error, Result};
pub use objectives::{
    cycle_time, energy, fitness, improvement, linspace, normalize, segment_breakdown, sweep,
    AccelRule, Normalization, ObjectiveReport, SegmentObjective, SweepOutcome, SweepRow,
};
pub use optimizer::{
    optimize_trajectory, repair_params, run as run_pso, tile_bounds, OptimizeOutcome, PsoConfig,
    PsoRun, SwarmState,
};
pub use robot_model::{
    JointConfig, JointLimits, KinematicModel, LimitKind, LimitViolation, Pose, RangeViolation,
    RobotModel, DOF, JOINT_RANGE,
};
pub use time_scaling::{ProfileSample, TrapezoidProfile};
pub use trajectory::{JointSample, MoveType, Segment, SegmentParams, Trajectory, WaypointFile};
