//! Geometric gait analysis for planar walkers whose legs pin to the ground.
//!
//! The model is a rigid body with `N` rotationally-offset legs driven by a
//! single rotor angle. Exactly one leg is pinned (no-slip) at a time; which
//! leg is pinned is a discrete contact mode, and gaits alternate continuous
//! rotor swings with instantaneous-in-shape contact switches. Because pivoting
//! about a pinned foot at fixed leg length is holonomic in translation, each
//! contact mode has a closed-form connection from rotor rate to body velocity,
//! and the net displacement of a cyclic gait reduces to line integrals over
//! panels spanned by pairs of contact modes.
//!
//! Body rotation is held at zero throughout: poses translate only.
//!
//! Modules:
//! - [`se2`]: planar pose and body-velocity types.
//! - [`kinematics`]: system description, per-leg Jacobian, no-slip constraint
//!   rows, and the per-mode connection vector.
//! - [`panels`]: mode-pair interpolation, curvature grids, and the switching
//!   panels whose integrals give per-cycle displacement.
//! - [`gait`]: gait primitives, validation, trajectory reconstruction, and the
//!   panel-sum displacement that must match the reconstructed trajectory.
//! - [`gaitspace`]: reduction of a complex gait into signed panel sub-gaits
//!   and lifting a decomposition back to an executable gait.
//! - [`optimize`]: swing-amplitude effectiveness and its maximization.

pub mod gait;
pub mod gaitspace;
pub mod kinematics;
pub mod optimize;
pub mod panels;
pub mod se2;

// Vectors and matrices in the public API come from nalgebra; re-export it so
// downstream crates can name those types at the exact version used here.
pub use nalgebra;
