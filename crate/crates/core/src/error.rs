//! Error type shared by every module of the crate.

use thiserror::Error;

use crate::robot_model::LimitViolation;
use crate::trajectory::MoveType;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The requested profile parameters cannot produce a valid trapezoid.
    /// The message names the violated constraint so callers can adjust.
    #[error("infeasible profile: {0}")]
    InfeasibleProfile(String),

    #[error("unsupported move type {0:?}: only MoveJ segments can be planned")]
    UnsupportedMoveType(MoveType),

    #[error("zero-length segment: start and end waypoints coincide")]
    ZeroLengthSegment,

    #[error("trajectory requires at least 2 waypoints, got {0}")]
    EmptyTrajectory(usize),

    #[error("expected {expected} (v, a) parameter pairs for {expected} segments, got {got}")]
    ParamCountMismatch { expected: usize, got: usize },

    /// A planned segment exceeds a per-joint kinematic bound. Indices are
    /// 1-based, matching pendant-style joint numbering.
    #[error("segment {segment}: {violation}")]
    SegmentLimit {
        segment: usize,
        violation: LimitViolation,
    },

    #[error("degenerate range: all values equal, cannot min-max normalize")]
    DegenerateRange,

    #[error("invalid improvement: best fitness {best} exceeds candidate {candidate}")]
    InvalidImprovement { candidate: f64, best: f64 },

    #[error("sweep needs at least {required} feasible grid rows, got {feasible}")]
    InsufficientSweep { feasible: usize, required: usize },

    #[error("bad optimizer config: {0}")]
    BadConfig(String),

    #[error("no feasible point: every evaluated particle violated constraints")]
    NoFeasiblePoint,

    #[error("robot description: {0}")]
    BadRobotModel(String),

    #[error("malformed input: {0}")]
    MalformedInput(String),
}
