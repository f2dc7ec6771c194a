//! Trajectory-level contracts: exact waypoint continuity, rest-to-rest
//! boundaries, three-level joint acceleration, and agreement between the
//! sampled velocity and a finite-difference derivative of the position.

use trapzopt_core::rng::CounterRng;
use trapzopt_core::{JointConfig, JointLimits, SegmentParams, Trajectory, DOF};

fn demo_trajectory() -> Trajectory {
    let waypoints = [
        JointConfig::new([0.0, -1.57, 1.2, -1.2, -1.57, 0.0]),
        JointConfig::new([0.9, -1.1, 0.7, -1.4, -1.0, 0.3]),
        JointConfig::new([0.4, -0.7, 1.5, -2.0, -1.3, -0.4]),
        JointConfig::new([-0.6, -1.4, 0.9, -1.0, -0.6, 0.5]),
    ];
    let params = [
        SegmentParams::new(0.8, 2.0),
        SegmentParams::new(1.0, 2.5),
        SegmentParams::new(0.6, 1.5),
    ];
    Trajectory::plan(&waypoints, &params, &JointLimits::default()).unwrap()
}

#[test]
fn waypoints_are_at_rest() {
    let traj = demo_trajectory();
    for &boundary in traj.boundaries() {
        let sample = traj.sample(boundary);
        assert_eq!(
            sample.velocity, [0.0; DOF],
            "moving at waypoint t = {boundary}"
        );
    }
}

#[test]
fn segment_boundaries_reproduce_waypoints_exactly() {
    let traj = demo_trajectory();
    for (i, segment) in traj.segments().iter().enumerate() {
        let at_start = traj.sample(traj.boundaries()[i]);
        assert_eq!(at_start.position, *segment.start());
        let at_end = traj.sample(traj.boundaries()[i + 1]);
        assert_eq!(at_end.position, *segment.end());
    }
}

#[test]
fn joint_acceleration_is_bang_cruise_bang() {
    let traj = demo_trajectory();
    for segment in traj.segments() {
        let a = segment.profile().accel();
        for i in 0..=200 {
            let t = segment.duration() * i as f64 / 200.0;
            let sample = segment.sample(t);
            for (m, &qdd) in sample.acceleration.iter().enumerate() {
                let scale = segment.delta()[m] * a;
                let is_level =
                    (qdd - scale).abs() < 1e-12 || qdd.abs() < 1e-12 || (qdd + scale).abs() < 1e-12;
                assert!(
                    is_level,
                    "joint {} acceleration {qdd} off-level at t = {t}",
                    m + 1
                );
            }
        }
    }
}

#[test]
fn sampled_velocity_matches_central_differences() {
    let traj = demo_trajectory();
    let dt = 1e-5;
    let rng = CounterRng::new(5);
    for k in 0..500 {
        let t = rng.uniform_in(dt, traj.total_time() - dt, 0, k, 0, 0);
        let ahead = traj.sample(t + dt).position;
        let behind = traj.sample(t - dt).position;
        let sampled = traj.sample(t).velocity;
        for (m, &qd) in sampled.iter().enumerate() {
            let fd = (ahead.0[m] - behind.0[m]) / (2.0 * dt);
            assert!(
                (fd - qd).abs() < 1e-4,
                "joint {} velocity {qd} vs finite difference {fd} at t = {t}",
                m + 1
            );
        }
    }
}

#[test]
fn total_time_telescopes() {
    let traj = demo_trajectory();
    let summed: f64 = traj.segments().iter().map(|s| s.duration()).sum();
    assert!((traj.total_time() - summed).abs() < 1e-12);
    assert_eq!(traj.boundaries().len(), traj.segments().len() + 1);
}
