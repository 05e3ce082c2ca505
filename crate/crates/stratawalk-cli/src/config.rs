//! JSON walker configuration.
//!
//! One config file describes the hardware (legs, servo) plus optional
//! per-analysis blocks. Unknown fields are rejected rather than ignored so a
//! typo cannot silently fall back to a default. All angles are radians given
//! as JSON numbers; no unit suffixes exist to misread.

use serde::Deserialize;
use std::f64::consts::FRAC_PI_2;
use stratawalk::gait::Gait;
use stratawalk::kinematics::{SpecError, SystemSpec};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub legs: LegsConfig,
    pub servo: ServoConfig,
    #[serde(default)]
    pub grid: Option<GridConfig>,
    #[serde(default)]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub trajectory: Option<TrajectoryConfig>,
    /// Default gait for `simulate`/`reduce` when no `--gait` file is given.
    #[serde(default)]
    pub gait: Option<Gait>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LegsConfig {
    pub count: usize,
    pub length: f64,
    /// Mounting angles, radians; evenly spaced when omitted.
    #[serde(default)]
    pub offsets: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ServoConfig {
    pub rate: f64,
    pub switch_time: f64,
    /// Largest |alpha| the rotor may reach; quarter turn when omitted.
    #[serde(default)]
    pub swing_bound: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n_alpha: usize,
    pub n_beta: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub ratios: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryConfig {
    pub samples_per_swing: usize,
}

pub const DEFAULT_GRID: GridConfig = GridConfig {
    n_alpha: 21,
    n_beta: 101,
};

pub const DEFAULT_SAMPLES_PER_SWING: usize = 32;

impl Config {
    pub fn to_spec(&self) -> Result<SystemSpec, SpecError> {
        let spec = match &self.legs.offsets {
            Some(offsets) => SystemSpec::with_offsets(
                self.legs.count,
                self.legs.length,
                offsets.clone(),
                self.servo.rate,
                self.servo.switch_time,
            )?,
            None => SystemSpec::uniform(
                self.legs.count,
                self.legs.length,
                self.servo.rate,
                self.servo.switch_time,
            )?,
        };
        spec.with_swing_bound(self.servo.swing_bound.unwrap_or(FRAC_PI_2))
    }

    pub fn grid(&self) -> GridConfig {
        self.grid.unwrap_or(DEFAULT_GRID)
    }

    pub fn samples_per_swing(&self) -> usize {
        self.trajectory
            .map(|t| t.samples_per_swing)
            .unwrap_or(DEFAULT_SAMPLES_PER_SWING)
    }
}
