//! 6-DoF manipulator description: joint limits, Denavit-Hartenberg
//! parameters, and forward kinematics for end-point path export.
//!
//! The description is data, not code: a robot file carries the DH table and
//! per-joint velocity/acceleration bounds, so arms other than the bundled
//! UR5 can be described without recompiling.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DOF: usize = 6;

/// Allowed joint angle magnitude (UR-style +-2 pi wrap range).
pub const JOINT_RANGE: f64 = std::f64::consts::TAU;

/// A waypoint in joint space: 6 joint angles in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JointConfig(pub [f64; DOF]);

impl JointConfig {
    pub fn new(q: [f64; DOF]) -> Self {
        Self(q)
    }

    pub fn zeros() -> Self {
        Self([0.0; DOF])
    }

    pub fn angles(&self) -> &[f64; DOF] {
        &self.0
    }

    /// Per-joint displacement `other - self`.
    pub fn delta_to(&self, other: &JointConfig) -> [f64; DOF] {
        std::array::from_fn(|m| other.0[m] - self.0[m])
    }

    pub fn in_range(&self) -> bool {
        self.0.iter().all(|q| q.abs() <= JOINT_RANGE)
    }
}

/// Per-joint kinematic bounds, strictly positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointLimits {
    pub velocity: [f64; DOF],
    pub acceleration: [f64; DOF],
}

impl Default for JointLimits {
    /// Nominal UR5 ratings: pi rad/s per joint, with 2 pi rad/s^2 as the
    /// acceleration ceiling.
    fn default() -> Self {
        Self {
            velocity: [std::f64::consts::PI; DOF],
            acceleration: [std::f64::consts::TAU; DOF],
        }
    }
}

impl JointLimits {
    pub fn validate(&self) -> Result<()> {
        for (m, (&v, &a)) in self.velocity.iter().zip(&self.acceleration).enumerate() {
            if !(v > 0.0) || !(a > 0.0) || !v.is_finite() || !a.is_finite() {
                return Err(Error::BadRobotModel(format!(
                    "joint {} limits must be strictly positive, got v_max = {v}, a_max = {a}",
                    m + 1
                )));
            }
        }
        Ok(())
    }

    /// Checks each waypoint against the joint wrap range. Returns every
    /// violation (empty report means all waypoints are usable); fewer than
    /// two waypoints is an error because no segment can be formed.
    pub fn validate_waypoints(&self, waypoints: &[JointConfig]) -> Result<Vec<RangeViolation>> {
        if waypoints.len() < 2 {
            return Err(Error::EmptyTrajectory(waypoints.len()));
        }
        let mut violations = Vec::new();
        for (w, config) in waypoints.iter().enumerate() {
            for (m, &q) in config.0.iter().enumerate() {
                if !(q.abs() <= JOINT_RANGE) {
                    violations.push(RangeViolation {
                        waypoint: w + 1,
                        joint: m + 1,
                        value: q,
                    });
                }
            }
        }
        Ok(violations)
    }
}

/// A joint angle outside the wrap range. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeViolation {
    pub waypoint: usize,
    pub joint: usize,
    pub value: f64,
}

impl std::fmt::Display for RangeViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "waypoint {} joint {} out of range: {} rad exceeds +-2pi",
            self.waypoint, self.joint, self.value
        )
    }
}

/// Which bound a segment exceeds; indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Velocity,
    Acceleration,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitViolation {
    pub joint: usize,
    pub kind: LimitKind,
    pub peak: f64,
    pub bound: f64,
}

impl std::fmt::Display for LimitViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (what, unit) = match self.kind {
            LimitKind::Velocity => ("velocity", "rad/s"),
            LimitKind::Acceleration => ("acceleration", "rad/s^2"),
        };
        write!(
            f,
            "joint {} peak {what} {} {unit} exceeds limit {} {unit}",
            self.joint, self.peak, self.bound
        )
    }
}

/// One Denavit-Hartenberg row (standard convention), lengths in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct DhRow {
    pub a: f64,
    pub d: f64,
    pub alpha: f64,
}

impl From<[f64; 3]> for DhRow {
    fn from(row: [f64; 3]) -> Self {
        Self {
            a: row[0],
            d: row[1],
            alpha: row[2],
        }
    }
}

impl From<DhRow> for [f64; 3] {
    fn from(row: DhRow) -> Self {
        [row.a, row.d, row.alpha]
    }
}

/// The kinematic chain: exactly six DH rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KinematicModel {
    rows: [DhRow; DOF],
}

/// End-effector pose in the base frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Pose {
    pub position: Vector3<f64>,
    pub rotation: Matrix3<f64>,
}

impl KinematicModel {
    pub fn new(rows: [DhRow; DOF]) -> Self {
        Self { rows }
    }

    pub fn rows(&self) -> &[DhRow; DOF] {
        &self.rows
    }

    /// Workspace radius bound: the sum of per-link translation norms. No
    /// configuration can place the flange farther from the base than this.
    pub fn reach(&self) -> f64 {
        self.rows.iter().map(|r| r.a.hypot(r.d)).sum()
    }

    /// Forward kinematics: composes the six standard DH link transforms
    /// `Rz(theta) * Tz(d) * Tx(a) * Rx(alpha)`.
    pub fn forward(&self, q: &JointConfig) -> Pose {
        let mut rotation = Matrix3::identity();
        let mut position = Vector3::zeros();
        for (row, &theta) in self.rows.iter().zip(q.angles()) {
            let (st, ct) = theta.sin_cos();
            let (sa, ca) = row.alpha.sin_cos();
            let link_rotation = Matrix3::new(
                ct,
                -st * ca,
                st * sa, //
                st,
                ct * ca,
                -ct * sa, //
                0.0,
                sa,
                ca,
            );
            let link_translation = Vector3::new(row.a * ct, row.a * st, row.d);
            position += rotation * link_translation;
            rotation *= link_rotation;
        }
        Pose { position, rotation }
    }

    /// Straight-line distance between the flange positions at two
    /// configurations.
    pub fn chord_length(&self, q0: &JointConfig, q1: &JointConfig) -> f64 {
        (self.forward(q1).position - self.forward(q0).position).norm()
    }
}

/// Complete robot description as carried by the JSON robot file:
/// `{ "dh": [[a, d, alpha] x6], "v_max": [x6], "a_max": [x6] }`, SI units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RobotFile", into = "RobotFile")]
pub struct RobotModel {
    pub kinematics: KinematicModel,
    pub limits: JointLimits,
}

#[derive(Serialize, Deserialize)]
struct RobotFile {
    dh: [[f64; 3]; DOF],
    v_max: [f64; DOF],
    a_max: [f64; DOF],
}

impl TryFrom<RobotFile> for RobotModel {
    type Error = Error;

    fn try_from(file: RobotFile) -> Result<Self> {
        let limits = JointLimits {
            velocity: file.v_max,
            acceleration: file.a_max,
        };
        limits.validate()?;
        Ok(Self {
            kinematics: KinematicModel::new(file.dh.map(DhRow::from)),
            limits,
        })
    }
}

impl From<RobotModel> for RobotFile {
    fn from(model: RobotModel) -> Self {
        Self {
            dh: model.kinematics.rows.map(<[f64; 3]>::from),
            v_max: model.limits.velocity,
            a_max: model.limits.acceleration,
        }
    }
}

impl RobotModel {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::BadRobotModel(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("robot model serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const UR5_JSON: &str = include_str!("../../../data/ur5.json");

    fn ur5() -> RobotModel {
        RobotModel::from_json(UR5_JSON).unwrap()
    }

    #[test]
    fn ur5_file_parses_with_default_limits() {
        let model = ur5();
        assert_eq!(model.limits, JointLimits::default());
        assert!((model.kinematics.rows[1].a + 0.425).abs() < 1e-12);
    }

    #[test]
    fn zero_config_is_inside_nominal_reach() {
        let pose = ur5().kinematics.forward(&JointConfig::zeros());
        assert!(
            pose.position.norm() <= 0.85 + 1e-6,
            "|p| = {}",
            pose.position.norm()
        );
    }

    #[test]
    fn random_configs_stay_inside_reach_with_orthonormal_rotation() {
        let model = ur5();
        let reach = model.kinematics.reach();
        let rng = crate::rng::CounterRng::new(11);
        for k in 0..1000 {
            let q = JointConfig::new(std::array::from_fn(|m| {
                rng.uniform_in(-JOINT_RANGE, JOINT_RANGE, 0, k, m as u64, 0)
            }));
            let pose = model.kinematics.forward(&q);
            assert!(pose.position.norm() <= reach + 1e-9);
            let gram = pose.rotation.transpose() * pose.rotation;
            assert!((gram - Matrix3::identity()).abs().max() < 1e-9);
            assert!((pose.rotation.determinant() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn full_turn_on_joint_one_repeats_the_pose() {
        let model = ur5();
        let base = JointConfig::new([0.3, -1.1, 0.9, -0.4, 0.7, 0.2]);
        let mut turned = base;
        turned.0[0] += std::f64::consts::TAU;
        let p0 = model.kinematics.forward(&base);
        let p1 = model.kinematics.forward(&turned);
        assert!((p0.position - p1.position).norm() < 1e-9);
        assert!((p0.rotation - p1.rotation).abs().max() < 1e-9);
    }

    #[test]
    fn waypoint_validation_passes_in_range_pairs() {
        let limits = JointLimits::default();
        let wps = [
            JointConfig::zeros(),
            JointConfig::new([1.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
        ];
        assert!(limits.validate_waypoints(&wps).unwrap().is_empty());
    }

    #[test]
    fn waypoint_validation_names_the_offending_joint() {
        let limits = JointLimits::default();
        let mut bad = JointConfig::zeros();
        bad.0[2] = 7.0; // joint 3, beyond 2 pi
        let report = limits
            .validate_waypoints(&[JointConfig::zeros(), bad])
            .unwrap();
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].joint, 3);
        assert_eq!(report[0].waypoint, 2);
        assert_eq!(report[0].value, 7.0);
    }

    #[test]
    fn waypoint_validation_rejects_single_waypoint() {
        let limits = JointLimits::default();
        assert_eq!(
            limits.validate_waypoints(&[JointConfig::zeros()]),
            Err(Error::EmptyTrajectory(1))
        );
    }

    #[test]
    fn nonpositive_limits_are_rejected() {
        let mut file: serde_json::Value = serde_json::from_str(UR5_JSON).unwrap();
        file["v_max"][3] = serde_json::json!(0.0);
        let err = RobotModel::from_json(&file.to_string()).unwrap_err();
        assert!(matches!(err, Error::BadRobotModel(_)));
    }
}
