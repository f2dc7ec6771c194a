//! Quadrature oracles and sampling helpers shared by the test suites.
//!
//! The oracles deliberately avoid the library's closed forms: they sample
//! profiles and segments through the public evaluation API and integrate
//! numerically, so agreement with the closed forms is a genuine two-route
//! check. Simpson's rule is applied per smooth phase of the trapezoid
//! (acceleration is constant and velocity linear inside a phase, so the
//! rule is exact there up to rounding).

use trapzopt_core::rng::CounterRng;
use trapzopt_core::{JointConfig, Segment, SegmentParams, TrapezoidProfile, DOF};

/// Composite Simpson quadrature of `f` over `[a, b]` with `n` panels
/// (rounded up to even).
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n = if n.is_multiple_of(2) { n.max(2) } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += weight * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// Integrates `f` over the profile's three phases separately, `n` panels
/// per phase, splitting exactly at the ramp boundaries. Nodes that land on
/// a phase boundary are nudged a hair inside the phase so the integrand's
/// one-sided value is used at its jump discontinuities.
pub fn integrate_over_phases(
    profile: &TrapezoidProfile,
    n: usize,
    f: impl Fn(f64) -> f64 + Copy,
) -> f64 {
    let t_ramp = profile.ramp_time();
    let t_total = profile.duration();
    let cruise_end = (t_total - t_ramp).max(t_ramp);
    let phase = |lo: f64, hi: f64| {
        if hi <= lo {
            return 0.0;
        }
        let inset = (hi - lo) * 1e-12;
        simpson(|t| f(t.clamp(lo + inset, hi - inset)), lo, hi, n)
    };
    phase(0.0, t_ramp) + phase(t_ramp, cruise_end) + phase(cruise_end, t_total)
}

/// Quadrature route for the squared-acceleration integral of a profile.
pub fn sq_accel_quadrature(profile: &TrapezoidProfile, n: usize) -> f64 {
    integrate_over_phases(profile, n, |t| {
        let a = profile.eval(t).acceleration;
        a * a
    })
}

/// Quadrature route for the total displacement of a profile.
pub fn displacement_quadrature(profile: &TrapezoidProfile, n: usize) -> f64 {
    integrate_over_phases(profile, n, |t| profile.eval(t).velocity)
}

/// Quadrature route for the energy objective of one segment: the sum over
/// joints of the RMS sampled joint acceleration times the duration.
pub fn segment_energy_quadrature(segment: &Segment, n: usize) -> f64 {
    let profile = segment.profile();
    let duration = profile.duration();
    (0..trapzopt_core::DOF)
        .map(|m| {
            let mean_square = integrate_over_phases(profile, n, |t| {
                let qdd = segment.sample(t).acceleration[m];
                qdd * qdd
            }) / duration;
            mean_square.sqrt() * duration
        })
        .sum()
}

/// Deterministic sampler for random feasible `(v, a)` profile parameters.
/// Accelerations land in `[0.2, 8]`; velocities cover the feasible interval
/// `(0, sqrt(a)]`, touching the triangular boundary every 50th draw.
pub struct ProfileSampler {
    rng: CounterRng,
}

impl ProfileSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: CounterRng::new(seed),
        }
    }

    pub fn velocity_accel(&self, k: u64) -> (f64, f64) {
        let (v, a) = self.velocity_accel_interior(k);
        if k % 50 == 49 {
            (a.sqrt(), a) // exact triangular boundary
        } else {
            (v, a)
        }
    }

    /// Like [`Self::velocity_accel`] but never snaps onto the triangular
    /// boundary. The `(a, T) -> v` inversion has a square-root branch point
    /// there, so round-trip accuracy claims only make sense for interior
    /// points — which is also all a continuous distribution ever produces.
    pub fn velocity_accel_interior(&self, k: u64) -> (f64, f64) {
        let a = self.rng.uniform_in(0.2, 8.0, 100, k, 0, 0);
        let v = a.sqrt() * self.rng.uniform_in(0.02, 0.999, 100, k, 1, 0);
        (v, a)
    }

    pub fn uniform_in(&self, lo: f64, hi: f64, stream: u64, a: u64, b: u64) -> f64 {
        self.rng.uniform_in(lo, hi, stream, a, b, 0)
    }

    /// Random multi-segment problem: waypoints with per-joint deltas in
    /// [-1, 1] (joint 1 kept clearly non-zero so no segment degenerates)
    /// and feasible `(v, a)` parameters per segment.
    pub fn trajectory_problem(
        &self,
        k: u64,
        max_segments: usize,
    ) -> (Vec<JointConfig>, Vec<SegmentParams>) {
        let segments = 1 + (self.rng.uniform(200, k, 0, 0) * max_segments as f64) as usize;
        let segments = segments.min(max_segments);
        let mut waypoints = vec![JointConfig::zeros()];
        let mut params = Vec::with_capacity(segments);
        for i in 0..segments {
            let previous = *waypoints.last().unwrap();
            let mut next = previous;
            for m in 0..DOF {
                let delta = if m == 0 {
                    let magnitude = self.rng.uniform_in(0.1, 1.0, 201, k, i as u64, m as u64);
                    let sign = if self.rng.uniform(202, k, i as u64, m as u64) < 0.5 {
                        -1.0
                    } else {
                        1.0
                    };
                    sign * magnitude
                } else {
                    self.rng.uniform_in(-1.0, 1.0, 201, k, i as u64, m as u64)
                };
                next.0[m] = previous.0[m] + delta;
            }
            waypoints.push(next);
            let (v, a) = self.velocity_accel(k.wrapping_mul(31).wrapping_add(i as u64));
            params.push(SegmentParams::new(v, a));
        }
        (waypoints, params)
    }
}
