//! Gaits: cyclic programs of rotor swings and contact switches.
//!
//! A gait is a sequence of two primitive moves. A *swing* drives the rotor
//! monotonically between two angles at the servo rate while one leg stays
//! pinned; a *switch* trades the pinned leg for another at a fixed rotor
//! angle, taking the hardware's switch time and moving the body not at all.
//! The sequence must be continuous in both rotor angle and contact mode, and
//! cyclic: the last primitive hands back to the first.
//!
//! Reconstruction integrates the per-mode connection along each swing. The
//! integral has a closed form (the connection is a rotated unit vector scaled
//! by the leg length), so trajectories are exact at every sample; a fine-step
//! numerical integrator exists in the test suites purely as an oracle.

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gaitspace;
use crate::kinematics::{ContactMode, SystemSpec};
use crate::se2::Pose;

/// One move of a gait.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GaitPrimitive {
    /// Drive the rotor from `alpha_start` to `alpha_end` with `mode` pinned.
    Swing {
        mode: ContactMode,
        alpha_start: f64,
        alpha_end: f64,
    },
    /// Re-pin from `from_mode` to `to_mode` with the rotor parked at
    /// `at_alpha`. Costs the walker's switch time; displaces nothing.
    Switch {
        from_mode: ContactMode,
        to_mode: ContactMode,
        at_alpha: f64,
    },
}

impl GaitPrimitive {
    pub(crate) fn start_mode(&self) -> ContactMode {
        match *self {
            GaitPrimitive::Swing { mode, .. } => mode,
            GaitPrimitive::Switch { from_mode, .. } => from_mode,
        }
    }

    pub(crate) fn end_mode(&self) -> ContactMode {
        match *self {
            GaitPrimitive::Swing { mode, .. } => mode,
            GaitPrimitive::Switch { to_mode, .. } => to_mode,
        }
    }

    pub(crate) fn start_alpha(&self) -> f64 {
        match *self {
            GaitPrimitive::Swing { alpha_start, .. } => alpha_start,
            GaitPrimitive::Switch { at_alpha, .. } => at_alpha,
        }
    }

    pub(crate) fn end_alpha(&self) -> f64 {
        match *self {
            GaitPrimitive::Swing { alpha_end, .. } => alpha_end,
            GaitPrimitive::Switch { at_alpha, .. } => at_alpha,
        }
    }

    /// The same move traversed backwards in time.
    pub fn reversed(&self) -> GaitPrimitive {
        match *self {
            GaitPrimitive::Swing {
                mode,
                alpha_start,
                alpha_end,
            } => GaitPrimitive::Swing {
                mode,
                alpha_start: alpha_end,
                alpha_end: alpha_start,
            },
            GaitPrimitive::Switch {
                from_mode,
                to_mode,
                at_alpha,
            } => GaitPrimitive::Switch {
                from_mode: to_mode,
                to_mode: from_mode,
                at_alpha,
            },
        }
    }
}

/// A cyclic gait. Plain data; call [`validate_gait`] to check it against a
/// walker before use.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Gait {
    pub primitives: Vec<GaitPrimitive>,
}

impl Gait {
    pub fn new(primitives: Vec<GaitPrimitive>) -> Self {
        Gait { primitives }
    }

    /// The whole cycle run backwards in time. Valid whenever `self` is.
    pub fn reversed(&self) -> Gait {
        Gait::new(self.primitives.iter().rev().map(|p| p.reversed()).collect())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GaitError {
    #[error("gait has no primitives")]
    Empty,
    #[error("primitive {index}: alpha value {alpha} is not finite")]
    NonFiniteAlpha { index: usize, alpha: f64 },
    #[error("primitive {index}: contact mode {mode} does not exist on this walker")]
    UnknownMode { index: usize, mode: usize },
    #[error("primitive {index}: switch re-pins the same leg {mode}")]
    SwitchSameMode { index: usize, mode: usize },
    #[error("primitive {index}: alpha {alpha} leaves the rotor swing range")]
    AlphaOutOfRange { index: usize, alpha: f64 },
    #[error(
        "primitive {index} starts at alpha {found} but the previous move ended at {expected}"
    )]
    AlphaDiscontinuity {
        index: usize,
        expected: f64,
        found: f64,
    },
    #[error(
        "primitive {index} starts in mode S{found} but the previous move ended in mode S{expected}"
    )]
    ModeDiscontinuity {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("gait is not cyclic: it ends at alpha {end} but starts at alpha {start}")]
    NotCyclicAlpha { start: f64, end: f64 },
    #[error("gait is not cyclic: it ends in mode S{end} but starts in mode S{start}")]
    NotCyclicMode { start: usize, end: usize },
    #[error("gait never swings the rotor")]
    MissingSwing,
    #[error("gait never switches contact")]
    MissingSwitch,
}

/// Check a gait against a walker.
///
/// Per-primitive checks run first in sequence order (finite angles, known
/// modes, distinct switch legs, rotor range), then pairwise continuity in
/// rotor angle and contact mode, then cyclic closure, and finally that the
/// gait contains at least one swing and one switch. The first violation is
/// reported with its primitive index.
pub fn validate_gait(spec: &SystemSpec, gait: &Gait) -> Result<(), GaitError> {
    let prims = &gait.primitives;
    if prims.is_empty() {
        return Err(GaitError::Empty);
    }
    for (index, prim) in prims.iter().enumerate() {
        let alphas: &[f64] = match prim {
            GaitPrimitive::Swing {
                alpha_start,
                alpha_end,
                ..
            } => &[*alpha_start, *alpha_end],
            GaitPrimitive::Switch { at_alpha, .. } => &[*at_alpha],
        };
        for &alpha in alphas {
            if !alpha.is_finite() {
                return Err(GaitError::NonFiniteAlpha { index, alpha });
            }
        }
        let modes: &[ContactMode] = match prim {
            GaitPrimitive::Swing { mode, .. } => &[*mode],
            GaitPrimitive::Switch {
                from_mode, to_mode, ..
            } => &[*from_mode, *to_mode],
        };
        for &mode in modes {
            if spec.check_mode(mode).is_err() {
                return Err(GaitError::UnknownMode {
                    index,
                    mode: mode.pinned_leg(),
                });
            }
        }
        if let GaitPrimitive::Switch {
            from_mode, to_mode, ..
        } = prim
        {
            if from_mode == to_mode {
                return Err(GaitError::SwitchSameMode {
                    index,
                    mode: from_mode.pinned_leg(),
                });
            }
        }
        for &alpha in alphas {
            if !spec.alpha_in_bounds(alpha) {
                return Err(GaitError::AlphaOutOfRange { index, alpha });
            }
        }
    }
    for index in 1..prims.len() {
        let prev = &prims[index - 1];
        let here = &prims[index];
        if here.start_alpha() != prev.end_alpha() {
            return Err(GaitError::AlphaDiscontinuity {
                index,
                expected: prev.end_alpha(),
                found: here.start_alpha(),
            });
        }
        if here.start_mode() != prev.end_mode() {
            return Err(GaitError::ModeDiscontinuity {
                index,
                expected: prev.end_mode().pinned_leg(),
                found: here.start_mode().pinned_leg(),
            });
        }
    }
    let first = prims.first().expect("non-empty");
    let last = prims.last().expect("non-empty");
    if last.end_alpha() != first.start_alpha() {
        return Err(GaitError::NotCyclicAlpha {
            start: first.start_alpha(),
            end: last.end_alpha(),
        });
    }
    if last.end_mode() != first.start_mode() {
        return Err(GaitError::NotCyclicMode {
            start: first.start_mode().pinned_leg(),
            end: last.end_mode().pinned_leg(),
        });
    }
    if !prims
        .iter()
        .any(|p| matches!(p, GaitPrimitive::Swing { .. }))
    {
        return Err(GaitError::MissingSwing);
    }
    if !prims
        .iter()
        .any(|p| matches!(p, GaitPrimitive::Switch { .. }))
    {
        return Err(GaitError::MissingSwitch);
    }
    Ok(())
}

/// One record of a reconstructed trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    /// Seconds since the start of the cycle. Strictly increasing.
    pub time: f64,
    pub pose: Pose,
    pub mode: ContactMode,
    pub alpha: f64,
}

/// Body trajectory over one gait cycle, starting from the world origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    samples: Vec<TrajectorySample>,
}

impl Trajectory {
    pub fn samples(&self) -> &[TrajectorySample] {
        &self.samples
    }

    /// Net translation over the cycle.
    pub fn displacement(&self) -> Vector2<f64> {
        let first = self.samples.first().expect("trajectory is never empty");
        let last = self.samples.last().expect("trajectory is never empty");
        last.pose.translation() - first.pose.translation()
    }

    /// Wall-clock length of the cycle, seconds.
    pub fn duration(&self) -> f64 {
        self.samples.last().expect("trajectory is never empty").time
    }
}

/// Exact displacement of one swing: integral of `-A_mode` over the rotor
/// interval, evaluated from the antiderivative.
fn swing_displacement(spec: &SystemSpec, mode: ContactMode, from: f64, to: f64) -> Vector2<f64> {
    let offset = spec.leg_offsets()[mode.pinned_leg() - 1];
    let r = spec.leg_length();
    let (sin_a, cos_a) = (from + offset).sin_cos();
    let (sin_b, cos_b) = (to + offset).sin_cos();
    Vector2::new(r * (cos_a - cos_b), r * (sin_a - sin_b))
}

/// Integrate a primitive sequence without demanding cyclic closure.
///
/// Shared by [`reconstruct_trajectory`] (which validates first) and by tests
/// that probe single primitives in isolation. The sequence must be
/// continuous; this is not re-checked here.
pub(crate) fn trace_primitives(
    spec: &SystemSpec,
    prims: &[GaitPrimitive],
    samples_per_swing: usize,
) -> Result<Trajectory, GaitError> {
    assert!(samples_per_swing >= 1, "need at least one sample per swing");
    let first = prims.first().ok_or(GaitError::Empty)?;
    let mut samples = vec![TrajectorySample {
        time: 0.0,
        pose: Pose::origin(),
        mode: first.start_mode(),
        alpha: first.start_alpha(),
    }];
    let mut time = 0.0f64;
    let mut pose = Pose::origin();
    for prim in prims {
        match *prim {
            GaitPrimitive::Swing {
                mode,
                alpha_start,
                alpha_end,
            } => {
                let duration = (alpha_end - alpha_start).abs() / spec.servo_rate();
                if duration == 0.0 {
                    continue;
                }
                let start_pose = pose;
                for k in 1..=samples_per_swing {
                    let frac = k as f64 / samples_per_swing as f64;
                    let (alpha, t) = if k == samples_per_swing {
                        (alpha_end, time + duration)
                    } else {
                        (
                            alpha_start + (alpha_end - alpha_start) * frac,
                            time + duration * frac,
                        )
                    };
                    let here =
                        start_pose.translated(swing_displacement(spec, mode, alpha_start, alpha));
                    samples.push(TrajectorySample {
                        time: t,
                        pose: here,
                        mode,
                        alpha,
                    });
                }
                pose = start_pose
                    .translated(swing_displacement(spec, mode, alpha_start, alpha_end));
                time += duration;
            }
            GaitPrimitive::Switch {
                to_mode, at_alpha, ..
            } => {
                // Switching never moves the body; it only spends time.
                if spec.switch_time() > 0.0 {
                    time += spec.switch_time();
                    samples.push(TrajectorySample {
                        time,
                        pose,
                        mode: to_mode,
                        alpha: at_alpha,
                    });
                }
            }
        }
    }
    Ok(Trajectory { samples })
}

/// Reconstruct the body trajectory of a valid gait, starting at the origin.
///
/// `samples_per_swing` sets how many records each swing contributes (its
/// endpoint included; the shared start point is the previous record). Every
/// sample is exact: the connection integral is evaluated in closed form, not
/// stepped.
pub fn reconstruct_trajectory(
    spec: &SystemSpec,
    gait: &Gait,
    samples_per_swing: usize,
) -> Result<Trajectory, GaitError> {
    validate_gait(spec, gait)?;
    trace_primitives(spec, &gait.primitives, samples_per_swing)
}

/// Net displacement of a valid gait computed the panel way: decompose the
/// cycle into signed mode-pair sub-gaits and sum their exact panel integrals.
/// Must agree with [`reconstruct_trajectory`]'s endpoint to floating-point
/// accuracy; the agreement is the discrete Stokes identity for this system.
pub fn gait_displacement_panels(spec: &SystemSpec, gait: &Gait) -> Result<Vector2<f64>, GaitError> {
    let decomposition = gaitspace::reduce(spec, gait)?;
    Ok(gaitspace::displacement_from_subgaits(spec, &decomposition)
        .expect("reduce emits valid sub-gaits"))
}

/// Wall-clock duration of one cycle: swept rotor angle over the servo rate,
/// plus the switch time per contact switch.
pub fn gait_duration(spec: &SystemSpec, gait: &Gait) -> Result<f64, GaitError> {
    validate_gait(spec, gait)?;
    Ok(primitives_duration(spec, &gait.primitives))
}

pub(crate) fn primitives_duration(spec: &SystemSpec, prims: &[GaitPrimitive]) -> f64 {
    prims
        .iter()
        .map(|p| match *p {
            GaitPrimitive::Swing {
                alpha_start,
                alpha_end,
                ..
            } => (alpha_end - alpha_start).abs() / spec.servo_rate(),
            GaitPrimitive::Switch { .. } => spec.switch_time(),
        })
        .sum()
}
