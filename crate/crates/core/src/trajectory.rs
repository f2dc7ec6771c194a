//! Point-to-point joint trajectories under MoveJ semantics.
//!
//! A segment moves all six joints in a coordinated motion between two
//! waypoints: every joint follows the same normalized time scaling, so one
//! `(v, a)` pair governs a whole segment and the joint path is
//! `q(t) = q0 + s(t) * dq`. Segments start and stop at rest, which makes a
//! trajectory a chain of independent rest-to-rest moves.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::robot_model::{JointConfig, JointLimits, LimitKind, LimitViolation, DOF};
use crate::time_scaling::TrapezoidProfile;

/// Waypoints closer than this (max joint displacement, rad) are duplicates.
pub const ZERO_LENGTH_TOL: f64 = 1e-9;

/// Vendor-style movement taxonomy. Only MoveJ is plannable here; MoveL and
/// MoveP need Cartesian path generation this crate does not model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveType {
    MoveJ,
    MoveL,
    MoveP,
}

/// Per-segment motion parameters: peak path velocity and path acceleration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct SegmentParams {
    pub velocity: f64,
    pub accel: f64,
}

impl SegmentParams {
    pub fn new(velocity: f64, accel: f64) -> Self {
        Self { velocity, accel }
    }
}

impl From<[f64; 2]> for SegmentParams {
    fn from(pair: [f64; 2]) -> Self {
        Self {
            velocity: pair[0],
            accel: pair[1],
        }
    }
}

impl From<SegmentParams> for [f64; 2] {
    fn from(p: SegmentParams) -> Self {
        [p.velocity, p.accel]
    }
}

/// One waypoint pair with its time scaling.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    start: JointConfig,
    end: JointConfig,
    delta: [f64; DOF],
    profile: TrapezoidProfile,
    move_type: MoveType,
}

/// Joint-space state at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointSample {
    pub position: JointConfig,
    pub velocity: [f64; DOF],
    pub acceleration: [f64; DOF],
}

impl Segment {
    /// Plans one rest-to-rest move between two distinct waypoints.
    pub fn plan(
        start: JointConfig,
        end: JointConfig,
        v: f64,
        a: f64,
        move_type: MoveType,
    ) -> Result<Self> {
        if move_type != MoveType::MoveJ {
            return Err(Error::UnsupportedMoveType(move_type));
        }
        let delta = start.delta_to(&end);
        let span = delta.iter().fold(0.0f64, |acc, d| acc.max(d.abs()));
        if span < ZERO_LENGTH_TOL {
            return Err(Error::ZeroLengthSegment);
        }
        let profile = TrapezoidProfile::from_velocity_accel(v, a)?;
        Ok(Self {
            start,
            end,
            delta,
            profile,
            move_type,
        })
    }

    pub fn start(&self) -> &JointConfig {
        &self.start
    }

    pub fn end(&self) -> &JointConfig {
        &self.end
    }

    pub fn delta(&self) -> &[f64; DOF] {
        &self.delta
    }

    pub fn profile(&self) -> &TrapezoidProfile {
        &self.profile
    }

    pub fn move_type(&self) -> MoveType {
        self.move_type
    }

    pub fn duration(&self) -> f64 {
        self.profile.duration()
    }

    /// Samples joint position, velocity, and acceleration at segment-local
    /// time `t` (clamped to `[0, T]`). Endpoint samples return the stored
    /// waypoints exactly.
    pub fn sample(&self, t: f64) -> JointSample {
        if t <= 0.0 {
            return JointSample {
                position: self.start,
                velocity: [0.0; DOF],
                acceleration: self.delta.map(|d| d * self.profile.accel()),
            };
        }
        if t >= self.duration() {
            return JointSample {
                position: self.end,
                velocity: [0.0; DOF],
                acceleration: self.delta.map(|d| -d * self.profile.accel()),
            };
        }
        let s = self.profile.eval(t);
        JointSample {
            position: JointConfig::new(std::array::from_fn(|m| {
                self.start.0[m] + s.position * self.delta[m]
            })),
            velocity: self.delta.map(|d| d * s.velocity),
            acceleration: self.delta.map(|d| d * s.acceleration),
        }
    }

    /// Peak per-joint velocity `|dq_m| * v` and acceleration `|dq_m| * a`
    /// against the bounds. Empty report means the segment is within limits.
    pub fn check_joint_limits(&self, limits: &JointLimits) -> Vec<LimitViolation> {
        let mut violations = Vec::new();
        for (m, &dq) in self.delta.iter().enumerate() {
            let peak_v = dq.abs() * self.profile.peak_velocity();
            if peak_v > limits.velocity[m] {
                violations.push(LimitViolation {
                    joint: m + 1,
                    kind: LimitKind::Velocity,
                    peak: peak_v,
                    bound: limits.velocity[m],
                });
            }
            let peak_a = dq.abs() * self.profile.accel();
            if peak_a > limits.acceleration[m] {
                violations.push(LimitViolation {
                    joint: m + 1,
                    kind: LimitKind::Acceleration,
                    peak: peak_a,
                    bound: limits.acceleration[m],
                });
            }
        }
        violations
    }
}

/// An ordered chain of segments sharing boundary waypoints.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    segments: Vec<Segment>,
    boundaries: Vec<f64>,
}

impl Trajectory {
    /// Plans every segment and rejects the trajectory if any joint bound is
    /// exceeded, naming the segment and joint.
    pub fn plan(
        waypoints: &[JointConfig],
        params: &[SegmentParams],
        limits: &JointLimits,
    ) -> Result<Self> {
        let trajectory = Self::plan_unchecked(waypoints, params)?;
        for (i, segment) in trajectory.segments.iter().enumerate() {
            if let Some(violation) = segment.check_joint_limits(limits).first() {
                return Err(Error::SegmentLimit {
                    segment: i + 1,
                    violation: *violation,
                });
            }
        }
        Ok(trajectory)
    }

    /// Plans segments without enforcing joint limits. Used where the caller
    /// handles bounds itself (normalization references, penalty methods).
    pub fn plan_unchecked(waypoints: &[JointConfig], params: &[SegmentParams]) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::EmptyTrajectory(waypoints.len()));
        }
        let expected = waypoints.len() - 1;
        if params.len() != expected {
            return Err(Error::ParamCountMismatch {
                expected,
                got: params.len(),
            });
        }
        let mut segments = Vec::with_capacity(expected);
        let mut boundaries = Vec::with_capacity(expected + 1);
        boundaries.push(0.0);
        for (pair, p) in waypoints.windows(2).zip(params) {
            let segment = Segment::plan(pair[0], pair[1], p.velocity, p.accel, MoveType::MoveJ)?;
            boundaries.push(boundaries.last().unwrap() + segment.duration());
            segments.push(segment);
        }
        Ok(Self {
            segments,
            boundaries,
        })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Cumulative segment boundary times, starting at 0.
    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    pub fn total_time(&self) -> f64 {
        *self.boundaries.last().unwrap()
    }

    pub fn waypoint_count(&self) -> usize {
        self.segments.len() + 1
    }

    pub fn params(&self) -> Vec<SegmentParams> {
        self.segments
            .iter()
            .map(|s| SegmentParams::new(s.profile().peak_velocity(), s.profile().accel()))
            .collect()
    }

    /// Samples the trajectory at global time `t` (clamped to the full span).
    /// Boundary instants sample the segment that starts there; either choice
    /// yields the shared waypoint at rest.
    pub fn sample(&self, t: f64) -> JointSample {
        let t = t.clamp(0.0, self.total_time());
        let idx = match self.boundaries[..self.segments.len()]
            .partition_point(|&boundary| boundary <= t)
        {
            0 => 0,
            n => n - 1,
        };
        self.segments[idx].sample(t - self.boundaries[idx])
    }
}

/// Waypoint file schema: `{ "waypoints": [[q1..q6] x n] }` in radians, with
/// an optional `"params": [[v, a] x (n-1)]` block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaypointFile {
    pub waypoints: Vec<JointConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<SegmentParams>>,
}

impl WaypointFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))
    }
}
