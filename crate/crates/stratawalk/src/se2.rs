//! Planar rigid-body pose and velocity.
//!
//! The walker's body never rotates in this artifact (`theta` stays `0.0`),
//! so poses compose by plain vector addition of the translation part.

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

/// Planar pose of the body frame in the world frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    /// Heading of the body frame. Always `0.0` for poses produced by this
    /// crate; kept as a field so trajectory records are explicit about it.
    pub theta: f64,
}

impl Pose {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite() && theta.is_finite());
        Pose { x, y, theta }
    }

    /// The identity pose: world origin, zero heading.
    pub fn origin() -> Self {
        Pose::new(0.0, 0.0, 0.0)
    }

    /// Translation part as a vector.
    pub fn translation(&self) -> Vector2<f64> {
        Vector2::new(self.x, self.y)
    }

    /// Pose reached after translating by `delta`. Heading is unchanged.
    pub fn translated(&self, delta: Vector2<f64>) -> Pose {
        Pose::new(self.x + delta.x, self.y + delta.y, self.theta)
    }
}

/// Instantaneous translational velocity of the body frame.
///
/// The rotational rate is omitted: the body is constrained not to rotate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyVelocity {
    pub vx: f64,
    pub vy: f64,
}

impl BodyVelocity {
    pub fn new(vx: f64, vy: f64) -> Self {
        debug_assert!(vx.is_finite() && vy.is_finite());
        BodyVelocity { vx, vy }
    }

    pub fn zero() -> Self {
        BodyVelocity::new(0.0, 0.0)
    }

    pub fn as_vector(&self) -> Vector2<f64> {
        Vector2::new(self.vx, self.vy)
    }
}

/// Advance `pose` by moving at `vel` for `dt` seconds (`dt >= 0`).
pub fn translate(pose: Pose, vel: BodyVelocity, dt: f64) -> Pose {
    debug_assert!(dt >= 0.0, "negative time step");
    pose.translated(vel.as_vector() * dt)
}
