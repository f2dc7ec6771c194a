//! Normalized trapezoidal time scaling.
//!
//! A profile maps time `[0, T]` onto path fraction `[0, 1]`: ramp up at
//! constant acceleration `a` for `t_a = v/a`, cruise at peak velocity `v`,
//! ramp down at `-a`. Only two of `(v, a, T)` are free; the third follows
//! from the unit-displacement condition, and each pairing has its own
//! feasibility guard:
//!
//! * `(v, a)`: `v^2/a <= 1`, else the peak velocity is never reached
//! * `(v, T)`: `1 < v*T <= 2`
//! * `(a, T)`: `a*T^2 >= 4`
//!
//! Equality in the first and last guards gives the degenerate triangular
//! profile (zero-length cruise). We accept the boundary so the feasible set
//! stays closed, which downstream optimizers rely on.

use crate::error::{Error, Result};

/// Absolute slack applied to every feasibility guard.
pub const FEASIBILITY_TOL: f64 = 1e-12;

/// One segment's time scaling: `s(t): [0, T] -> [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapezoidProfile {
    peak_velocity: f64,
    accel: f64,
    duration: f64,
    ramp_time: f64,
}

/// Path-coordinate state at one instant: `s`, `s_dot`, `s_ddot`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample {
    pub position: f64,
    pub velocity: f64,
    pub acceleration: f64,
}

impl TrapezoidProfile {
    /// Builds the minimum-time profile for a chosen peak velocity and
    /// acceleration. Fails when `v^2/a > 1`: the requested top speed is
    /// unreachable, so lower `v` or raise `a`.
    pub fn from_velocity_accel(v: f64, a: f64) -> Result<Self> {
        check_positive("v", v)?;
        check_positive("a", a)?;
        let ratio = v * v / a;
        if ratio > 1.0 + FEASIBILITY_TOL {
            return Err(Error::InfeasibleProfile(format!(
                "v^2/a = {ratio} exceeds 1: peak velocity {v} is unreachable at acceleration {a}; \
                 lower v or raise a"
            )));
        }
        // Inside the guard band, snap onto the exact triangular boundary so
        // the stored fields satisfy v^2/a <= 1 exactly.
        let a = a.max(v * v);
        let duration = (a + v * v) / (v * a);
        Ok(Self {
            peak_velocity: v,
            accel: a,
            duration,
            ramp_time: v / a,
        })
    }

    /// Builds the profile for a chosen peak velocity and total duration.
    /// Needs `1 < v*T <= 2`: below, the top speed cannot cover the unit
    /// distance in time; above, no trapezoid exists.
    pub fn from_velocity_duration(v: f64, duration: f64) -> Result<Self> {
        check_positive("v", v)?;
        check_positive("T", duration)?;
        let vt = v * duration;
        if vt <= 1.0 + FEASIBILITY_TOL {
            return Err(Error::InfeasibleProfile(format!(
                "v*T = {vt} but v*T > 1 is required: top speed {v} is too low to cover the unit \
                 distance within T = {duration}"
            )));
        }
        if vt > 2.0 + FEASIBILITY_TOL {
            return Err(Error::InfeasibleProfile(format!(
                "v*T = {vt} exceeds 2: no trapezoidal profile reaches peak velocity {v} over \
                 T = {duration}"
            )));
        }
        let a = (v * v / (vt - 1.0)).max(v * v);
        Ok(Self {
            peak_velocity: v,
            accel: a,
            duration,
            ramp_time: v / a,
        })
    }

    /// Builds the profile for a chosen acceleration and total duration.
    /// Needs `a*T^2 >= 4`, else the motion cannot finish in time. Takes the
    /// lower root for the peak velocity (the upper root violates `v*T <= 2`),
    /// evaluated in conjugate form to avoid cancellation for large `a*T^2`.
    pub fn from_accel_duration(a: f64, duration: f64) -> Result<Self> {
        check_positive("a", a)?;
        check_positive("T", duration)?;
        let at2 = a * duration * duration;
        if at2 < 4.0 - FEASIBILITY_TOL {
            return Err(Error::InfeasibleProfile(format!(
                "a*T^2 = {at2} is below 4: the motion cannot finish in T = {duration} at \
                 acceleration {a}"
            )));
        }
        let discriminant = (a * (at2 - 4.0)).max(0.0);
        let v = 2.0 * a / (a * duration + discriminant.sqrt());
        let a = a.max(v * v);
        Ok(Self {
            peak_velocity: v,
            accel: a,
            duration,
            ramp_time: v / a,
        })
    }

    pub fn peak_velocity(&self) -> f64 {
        self.peak_velocity
    }

    pub fn accel(&self) -> f64 {
        self.accel
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn ramp_time(&self) -> f64 {
        self.ramp_time
    }

    pub fn cruise_time(&self) -> f64 {
        (self.duration - 2.0 * self.ramp_time).max(0.0)
    }

    pub fn is_triangular(&self) -> bool {
        self.cruise_time() <= FEASIBILITY_TOL
    }

    /// Evaluates the scaling at time `t`. Times outside `[0, T]` clamp to
    /// the endpoint values, so samplers with accumulated floating-point
    /// error never fail.
    pub fn eval(&self, t: f64) -> ProfileSample {
        let t = t.clamp(0.0, self.duration);
        let (v, a) = (self.peak_velocity, self.accel);
        if t < self.ramp_time {
            ProfileSample {
                position: 0.5 * a * t * t,
                velocity: a * t,
                acceleration: a,
            }
        } else if t < self.duration - self.ramp_time {
            ProfileSample {
                position: v * t - v * v / (2.0 * a),
                velocity: v,
                acceleration: 0.0,
            }
        } else {
            let remaining = self.duration - t;
            ProfileSample {
                position: 1.0 - 0.5 * a * remaining * remaining,
                velocity: a * remaining,
                acceleration: -a,
            }
        }
    }

    /// Closed form of the squared-acceleration integral over the whole
    /// profile: two ramps of duration `v/a` at magnitude `a` give
    /// `a^2 * 2v/a = 2*a*v`.
    pub fn integral_sq_accel(&self) -> f64 {
        2.0 * self.accel * self.peak_velocity
    }
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::InfeasibleProfile(format!(
            "{name} must be positive and finite, got {value}"
        )));
    }
    Ok(())
}
