//! System description and per-contact-mode kinematics.
//!
//! A walker has `N >= 2` legs of common length `r`, each mounted at a fixed
//! angular offset from a single driven rotor. With the body held at zero
//! heading, leg `i` points along world angle `alpha + offset_i` and its tip
//! sits at `body + r * (cos, sin)` of that angle.
//!
//! Pinning leg `i` (contact mode `S_i`) imposes no-slip on its tip. Solving
//! the resulting constraint rows for the body velocity gives a connection
//! vector `A_i(alpha)`: the body moves with `gdot = -A_i(alpha) * alpha_dot`.

use nalgebra::{Matrix2x3, Matrix3x4, Vector2};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use thiserror::Error;

use crate::se2::BodyVelocity;

/// Default swing bound for the rotor angle, radians.
pub const DEFAULT_SWING_BOUND: f64 = PI / 2.0;

#[derive(Debug, Error, PartialEq)]
pub enum SpecError {
    #[error("leg count must be at least 2, got {0}")]
    TooFewLegs(usize),
    #[error("leg length must be positive and finite, got {0}")]
    BadLegLength(f64),
    #[error("servo rate must be positive and finite, got {0}")]
    BadServoRate(f64),
    #[error("switch time must be non-negative and finite, got {0}")]
    BadSwitchTime(f64),
    #[error("swing bound must be positive and finite, got {0}")]
    BadSwingBound(f64),
    #[error("expected {expected} leg offsets, got {got}")]
    OffsetCountMismatch { expected: usize, got: usize },
    #[error("leg offset {value} at position {index} is outside [0, 2*pi)")]
    OffsetOutOfRange { index: usize, value: f64 },
    #[error("leg index {0} is out of range (legs are numbered from 1)")]
    BadLegIndex(usize),
    #[error("contact mode index must be at least 1")]
    ZeroModeIndex,
}

/// Contact mode: exactly one leg pinned to the ground.
///
/// Legs are numbered from 1, matching the `S_1, S_2, ...` naming used in
/// output files. Modes with every leg pinned or no leg pinned are not
/// representable; they would either freeze or not constrain the body.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct ContactMode(usize);

impl ContactMode {
    pub fn new(pinned_leg: usize) -> Result<Self, SpecError> {
        if pinned_leg == 0 {
            return Err(SpecError::ZeroModeIndex);
        }
        Ok(ContactMode(pinned_leg))
    }

    /// 1-based index of the pinned leg.
    pub fn pinned_leg(&self) -> usize {
        self.0
    }
}

impl TryFrom<usize> for ContactMode {
    type Error = SpecError;
    fn try_from(value: usize) -> Result<Self, Self::Error> {
        ContactMode::new(value)
    }
}

impl From<ContactMode> for usize {
    fn from(mode: ContactMode) -> usize {
        mode.0
    }
}

impl std::fmt::Display for ContactMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S{}", self.0)
    }
}

/// Geometry and actuation parameters of one walker.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    leg_count: usize,
    leg_length: f64,
    /// Mount angle of each leg relative to the rotor, radians in `[0, 2*pi)`.
    leg_offsets: Vec<f64>,
    /// Rotor swing rate `s`, radians per second.
    servo_rate: f64,
    /// Time cost of one contact switch, seconds.
    switch_time: f64,
    /// Rotor angle is restricted to `[-swing_bound, swing_bound]`.
    swing_bound: f64,
}

impl SystemSpec {
    /// Walker with legs spread uniformly: leg `i` mounted at `2*pi*(i-1)/N`.
    /// The swing bound defaults to [`DEFAULT_SWING_BOUND`].
    pub fn uniform(
        leg_count: usize,
        leg_length: f64,
        servo_rate: f64,
        switch_time: f64,
    ) -> Result<Self, SpecError> {
        let offsets = (0..leg_count)
            .map(|k| TAU * k as f64 / leg_count as f64)
            .collect();
        SystemSpec::with_offsets(leg_count, leg_length, offsets, servo_rate, switch_time)
    }

    /// Walker with explicit leg mount angles.
    pub fn with_offsets(
        leg_count: usize,
        leg_length: f64,
        leg_offsets: Vec<f64>,
        servo_rate: f64,
        switch_time: f64,
    ) -> Result<Self, SpecError> {
        if leg_count < 2 {
            return Err(SpecError::TooFewLegs(leg_count));
        }
        if !(leg_length.is_finite() && leg_length > 0.0) {
            return Err(SpecError::BadLegLength(leg_length));
        }
        if !(servo_rate.is_finite() && servo_rate > 0.0) {
            return Err(SpecError::BadServoRate(servo_rate));
        }
        if !(switch_time.is_finite() && switch_time >= 0.0) {
            return Err(SpecError::BadSwitchTime(switch_time));
        }
        if leg_offsets.len() != leg_count {
            return Err(SpecError::OffsetCountMismatch {
                expected: leg_count,
                got: leg_offsets.len(),
            });
        }
        for (index, &value) in leg_offsets.iter().enumerate() {
            if !(value.is_finite() && (0.0..TAU).contains(&value)) {
                return Err(SpecError::OffsetOutOfRange { index, value });
            }
        }
        Ok(SystemSpec {
            leg_count,
            leg_length,
            leg_offsets,
            servo_rate,
            switch_time,
            swing_bound: DEFAULT_SWING_BOUND,
        })
    }

    /// Same walker with a different rotor swing bound.
    pub fn with_swing_bound(mut self, swing_bound: f64) -> Result<Self, SpecError> {
        if !(swing_bound.is_finite() && swing_bound > 0.0) {
            return Err(SpecError::BadSwingBound(swing_bound));
        }
        self.swing_bound = swing_bound;
        Ok(self)
    }

    pub fn leg_count(&self) -> usize {
        self.leg_count
    }

    pub fn leg_length(&self) -> f64 {
        self.leg_length
    }

    pub fn leg_offsets(&self) -> &[f64] {
        &self.leg_offsets
    }

    pub fn servo_rate(&self) -> f64 {
        self.servo_rate
    }

    pub fn switch_time(&self) -> f64 {
        self.switch_time
    }

    pub fn swing_bound(&self) -> f64 {
        self.swing_bound
    }

    /// All contact modes of this walker, `S_1 ..= S_N`.
    pub fn modes(&self) -> impl Iterator<Item = ContactMode> + '_ {
        (1..=self.leg_count).map(ContactMode)
    }

    /// True when `alpha` lies within the rotor swing range.
    pub fn alpha_in_bounds(&self, alpha: f64) -> bool {
        alpha.is_finite() && alpha.abs() <= self.swing_bound
    }

    fn check_leg(&self, leg: usize) -> Result<(), SpecError> {
        if leg == 0 || leg > self.leg_count {
            return Err(SpecError::BadLegIndex(leg));
        }
        Ok(())
    }

    /// Validate that a contact mode refers to one of this walker's legs.
    pub fn check_mode(&self, mode: ContactMode) -> Result<(), SpecError> {
        self.check_leg(mode.pinned_leg())
    }

    /// World angle of leg `leg` (1-based) when the rotor sits at `alpha`.
    pub fn leg_angle(&self, leg: usize, alpha: f64) -> Result<f64, SpecError> {
        self.check_leg(leg)?;
        Ok(alpha + self.leg_offsets[leg - 1])
    }

    /// Jacobian of leg `leg`'s tip frame with respect to
    /// `(body_vx, body_vy, body_thetadot, alpha_dot)`.
    ///
    /// Rows give the tip's longitudinal rate, lateral rate, and spin rate in
    /// the leg-aligned frame. Only geometry enters; no contact is assumed.
    pub fn foot_jacobian(&self, leg: usize, alpha: f64) -> Result<Matrix3x4<f64>, SpecError> {
        let angle = self.leg_angle(leg, alpha)?;
        let (sin, cos) = angle.sin_cos();
        let r = self.leg_length;
        #[rustfmt::skip]
        let jacobian = Matrix3x4::new(
             cos, sin, 0.0, 0.0,
            -sin, cos,   r,   r,
             0.0, 0.0, 1.0, 1.0,
        );
        Ok(jacobian)
    }

    /// No-slip constraint rows for contact mode `mode`: both translational
    /// rates of the pinned tip must vanish. Acts on `(body_vx, body_vy,
    /// alpha_dot)`; the tip is free to spin on its pin point, so the
    /// Jacobian's spin row is dropped, and the body's heading rate is already
    /// constrained to zero and does not appear.
    pub fn pfaffian(&self, mode: ContactMode, alpha: f64) -> Result<Matrix2x3<f64>, SpecError> {
        let angle = self.leg_angle(mode.pinned_leg(), alpha)?;
        let (sin, cos) = angle.sin_cos();
        let r = self.leg_length;
        #[rustfmt::skip]
        let pfaffian = Matrix2x3::new(
             cos, sin, 0.0,
            -sin, cos,   r,
        );
        Ok(pfaffian)
    }

    /// Connection vector `A_mode(alpha)` of the pinned-leg constraint:
    /// the body velocity is `-A_mode(alpha) * alpha_dot`.
    ///
    /// Solving the constraint rows in closed form gives
    /// `A = (-r * sin(alpha_i), r * cos(alpha_i))` with `alpha_i` the pinned
    /// leg's world angle.
    pub fn local_connection(&self, mode: ContactMode, alpha: f64) -> Result<Vector2<f64>, SpecError> {
        let angle = self.leg_angle(mode.pinned_leg(), alpha)?;
        let r = self.leg_length;
        Ok(Vector2::new(-r * angle.sin(), r * angle.cos()))
    }

    /// Body velocity while swinging the rotor at `alpha_dot` in mode `mode`.
    pub fn body_velocity(
        &self,
        mode: ContactMode,
        alpha: f64,
        alpha_dot: f64,
    ) -> Result<BodyVelocity, SpecError> {
        let a = self.local_connection(mode, alpha)?;
        Ok(BodyVelocity::new(-a.x * alpha_dot, -a.y * alpha_dot))
    }
}
