//! Choosing the swing amplitude that maximizes average forward speed.
//!
//! For the symmetric out-and-back gait over `[-a, a]` the body advances
//! `r sin a` per half cycle while the half cycle costs `2a/s` of swing time
//! plus one contact switch. The quotient
//!
//! ```text
//! E(a) = r sin(a) / (2 a / s + T)
//! ```
//!
//! (leg length `r`, servo rate `s`, switch time `T`) is the walker's speed
//! effectiveness; the full-cycle average speed is exactly twice it. `E` is
//! unimodal on `(0, pi/2]` and its interior maximizer solves
//! `tan(a) = a + s T / 2`, which this module finds by bisection. With free
//! switching (`T = 0`) the quotient only degrades as the amplitude grows, so
//! the maximizer collapses to the small-amplitude floor and is flagged as a
//! boundary answer.
//!
//! The same stationarity condition, written in terms of the swing-to-switch
//! time ratio `rho = (2 a / s) / T`, is `tan(a) = a (1 + 1 / rho)` — one
//! equation per ratio, independent of the hardware's actual switch time.
//! [`sweep_ratio`] tabulates its root across ratios.

use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;
use thiserror::Error;

use crate::kinematics::SystemSpec;

/// Smallest amplitude the search will report; stands in for "as small as
/// the hardware allows" when the true maximizer is the degenerate `a -> 0`.
pub const DEFAULT_AMPLITUDE_FLOOR: f64 = 1e-4;

/// Where an optimal amplitude landed relative to the search range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryFlag {
    /// Strictly inside the range; satisfies the stationarity condition.
    Interior,
    /// Clamped to the small-amplitude floor.
    Lower,
    /// Clamped to the swing-range ceiling.
    Upper,
}

impl std::fmt::Display for BoundaryFlag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoundaryFlag::Interior => "interior",
            BoundaryFlag::Lower => "lower",
            BoundaryFlag::Upper => "upper",
        })
    }
}

/// Result of a single amplitude optimization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    /// Maximizing swing amplitude, radians.
    pub alpha_hat: f64,
    /// Effectiveness at that amplitude (half the full-cycle average speed).
    pub effectiveness: f64,
    pub boundary: BoundaryFlag,
}

/// One row of a swing-to-switch time-ratio sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Swing time over switch time at the optimum.
    pub ratio: f64,
    /// Maximizing swing amplitude, radians.
    pub alpha_hat: f64,
    /// The switch time this ratio implies at the reported amplitude.
    pub switch_time: f64,
    /// Effectiveness at the reported amplitude and implied switch time.
    pub effectiveness: f64,
    pub boundary: BoundaryFlag,
}

#[derive(Debug, Error, PartialEq)]
pub enum OptimizeError {
    #[error(
        "amplitude search range must satisfy 0 < floor < ceiling <= swing bound \
         (got [{floor}, {ceiling}], bound {bound})"
    )]
    BadSearchRange { floor: f64, ceiling: f64, bound: f64 },
    #[error("ratio {index} must be positive and finite (got {value})")]
    BadRatio { index: usize, value: f64 },
}

/// Average forward speed of the half cycle at swing amplitude `alpha_hat`:
/// stride reach over swing-plus-switch time.
pub fn effectiveness(spec: &SystemSpec, alpha_hat: f64) -> f64 {
    debug_assert!(alpha_hat.is_finite() && alpha_hat >= 0.0);
    spec.leg_length() * alpha_hat.sin()
        / (2.0 * alpha_hat / spec.servo_rate() + spec.switch_time())
}

/// Find the effectiveness-maximizing amplitude within the walker's full
/// swing range, with the default small-amplitude floor.
pub fn optimal_amplitude(spec: &SystemSpec) -> Result<Optimum, OptimizeError> {
    optimal_amplitude_in(spec, DEFAULT_AMPLITUDE_FLOOR, spec.swing_bound())
}

/// Find the effectiveness-maximizing amplitude within `[floor, ceiling]`.
///
/// The interior stationarity condition is `tan(a) - a - s T / 2 = 0`, solved
/// to floating-point precision by bisection; answers that fall outside the
/// range are clamped and flagged. A zero switch time has no interior
/// stationary point at all — effectiveness only falls as the amplitude grows
/// — so the floor is returned, flagged [`BoundaryFlag::Lower`].
pub fn optimal_amplitude_in(
    spec: &SystemSpec,
    floor: f64,
    ceiling: f64,
) -> Result<Optimum, OptimizeError> {
    if !(floor.is_finite()
        && ceiling.is_finite()
        && floor > 0.0
        && floor < ceiling
        && ceiling <= spec.swing_bound())
    {
        return Err(OptimizeError::BadSearchRange {
            floor,
            ceiling,
            bound: spec.swing_bound(),
        });
    }
    let c = spec.servo_rate() * spec.switch_time() / 2.0;
    let (alpha_hat, boundary) = if c == 0.0 {
        (floor, BoundaryFlag::Lower)
    } else {
        // tan grows without bound before pi/2, so the root is caged in
        // (0, pi/2) whatever c is.
        let root = bisect(|x| x.tan() - x - c, 0.0, FRAC_PI_2);
        if root <= floor {
            (floor, BoundaryFlag::Lower)
        } else if root >= ceiling {
            (ceiling, BoundaryFlag::Upper)
        } else {
            (root, BoundaryFlag::Interior)
        }
    };
    Ok(Optimum {
        alpha_hat,
        effectiveness: effectiveness(spec, alpha_hat),
        boundary,
    })
}

/// Optimal amplitude for one swing-to-switch time ratio.
///
/// Solves `tan(a) = a (1 + 1 / ratio)` on `(0, pi/2)` and reports the
/// switch time the ratio implies at that amplitude, using the walker's leg
/// length and servo rate (its own switch time plays no part).
pub fn solve_ratio(spec: &SystemSpec, ratio: f64) -> Result<SweepRow, OptimizeError> {
    solve_ratio_at(spec, 0, ratio)
}

/// Tabulate [`solve_ratio`] over a list of ratios.
pub fn sweep_ratio(spec: &SystemSpec, ratios: &[f64]) -> Result<Vec<SweepRow>, OptimizeError> {
    ratios
        .iter()
        .enumerate()
        .map(|(index, &ratio)| solve_ratio_at(spec, index, ratio))
        .collect()
}

fn solve_ratio_at(spec: &SystemSpec, index: usize, ratio: f64) -> Result<SweepRow, OptimizeError> {
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(OptimizeError::BadRatio { index, value: ratio });
    }
    let slope = 1.0 + 1.0 / ratio;
    // Below the root the cubic term of tan loses to the extra slope, so any
    // sufficiently small positive probe brackets from the negative side.
    let root = bisect(|x| x.tan() - x * slope, 1e-12, FRAC_PI_2);
    let floor = DEFAULT_AMPLITUDE_FLOOR;
    let ceiling = spec.swing_bound();
    let (alpha_hat, boundary) = if root <= floor {
        (floor, BoundaryFlag::Lower)
    } else if root >= ceiling {
        (ceiling, BoundaryFlag::Upper)
    } else {
        (root, BoundaryFlag::Interior)
    };
    // Keep the reported row self-consistent: the switch time that gives
    // this ratio at the reported amplitude.
    let switch_time = 2.0 * alpha_hat / (spec.servo_rate() * ratio);
    let effectiveness = spec.leg_length() * alpha_hat.sin()
        / (2.0 * alpha_hat / spec.servo_rate() + switch_time);
    Ok(SweepRow {
        ratio,
        alpha_hat,
        switch_time,
        effectiveness,
        boundary,
    })
}

/// Bisection for `f` crossing from negative to positive on `[lo, hi]`.
/// Runs to floating-point exhaustion of the bracket.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    debug_assert!(f(lo) < 0.0 && f(hi) > 0.0, "root not bracketed");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
