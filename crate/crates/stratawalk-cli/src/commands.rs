//! The four analyses behind the subcommands.
//!
//! Each command validates its inputs, computes everything, and stages the
//! resulting files in a [`FileSet`]; nothing touches the filesystem until
//! the whole run has succeeded.

use serde::Serialize;

use stratawalk::gait::{reconstruct_trajectory, Gait, GaitError};
use stratawalk::gaitspace::{
    displacement_from_subgaits, lift, reduce, DecomposeError, SubGait,
};
use stratawalk::kinematics::{ContactMode, SpecError, SystemSpec};
use stratawalk::nalgebra::Vector2;
use stratawalk::optimize::{optimal_amplitude, sweep_ratio, OptimizeError};
use stratawalk::panels::{curvature_grid, default_profile, stratified_panel, PanelError};

use crate::config::GridConfig;
use crate::output::{fmt_float, to_json_file, Csv, FileSet};

/// One failure, sorted by who must fix it: the command line (exit 1), the
/// input data (exit 2), or the run itself (exit 3).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Failure(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Validation(m) | CliError::Failure(m) => m,
        }
    }
}

macro_rules! validation_from {
    ($($ty:ty),* $(,)?) => {$(
        impl From<$ty> for CliError {
            fn from(err: $ty) -> Self {
                CliError::Validation(err.to_string())
            }
        }
    )*};
}

validation_from!(SpecError, GaitError, PanelError, OptimizeError, DecomposeError);

/// Export the panel density and curvature grid of each requested mode pair.
///
/// With an explicit pair, exactly that ordered pair; otherwise every
/// cyclically adjacent pair of the walker (just `(1, 2)` for a biped).
pub fn cmd_panels(
    spec: &SystemSpec,
    grid_cfg: GridConfig,
    pair: Option<(usize, usize)>,
) -> Result<FileSet, CliError> {
    let pairs: Vec<(usize, usize)> = match pair {
        Some(p) => vec![p],
        None => {
            let n = spec.leg_count();
            if n == 2 {
                vec![(1, 2)]
            } else {
                (1..=n).map(|k| (k, k % n + 1)).collect()
            }
        }
    };

    let profile = default_profile();
    let mut files = FileSet::default();
    for (i, j) in pairs {
        let mode_i = ContactMode::new(i)?;
        let mode_j = ContactMode::new(j)?;
        let panel = stratified_panel(spec, mode_i, mode_j)?;
        let grid = curvature_grid(spec, mode_i, mode_j, &profile, grid_cfg.n_alpha, grid_cfg.n_beta)?;

        let mut panel_csv = Csv::new("alpha,dz_x,dz_y");
        for &alpha in grid.alphas() {
            let dz = panel.dz(alpha);
            panel_csv.row([fmt_float(alpha), fmt_float(dz.x), fmt_float(dz.y)]);
        }
        files.add(format!("panel_{i}_{j}.csv"), panel_csv.finish());

        let mut grid_csv = Csv::new("alpha,beta,curl_x,curl_y");
        for ai in 0..grid.n_alpha() {
            for bi in 0..grid.n_beta() {
                let curl = grid.value(ai, bi);
                grid_csv.row([
                    fmt_float(grid.alphas()[ai]),
                    fmt_float(grid.betas()[bi]),
                    fmt_float(curl.x),
                    fmt_float(curl.y),
                ]);
            }
        }
        files.add(format!("grid_{i}_{j}.csv"), grid_csv.finish());
    }
    Ok(files)
}

#[derive(Serialize)]
struct SubGaitRecord {
    sign: i8,
    mode_i: usize,
    mode_j: usize,
    alpha_minus: f64,
    alpha_plus: f64,
    z_x: f64,
    z_y: f64,
}

impl SubGaitRecord {
    fn new(spec: &SystemSpec, sg: &SubGait) -> Self {
        let z = stratified_panel(spec, sg.mode_i, sg.mode_j)
            .expect("sub-gait modes already validated")
            .displacement(sg.alpha_minus, sg.alpha_plus);
        SubGaitRecord {
            sign: sg.sign.into(),
            mode_i: sg.mode_i.pinned_leg(),
            mode_j: sg.mode_j.pinned_leg(),
            alpha_minus: sg.alpha_minus,
            alpha_plus: sg.alpha_plus,
            z_x: sg.sign.value() * z.x,
            z_y: sg.sign.value() * z.y,
        }
    }
}

#[derive(Serialize)]
struct SimulateSummary {
    z_x: f64,
    z_y: f64,
    duration: f64,
    panel_z_x: f64,
    panel_z_y: f64,
    stokes_residual: f64,
    decomposition: Vec<SubGaitRecord>,
}

/// Reconstruct a gait's trajectory and cross-check its displacement against
/// the signed panel sum of its decomposition.
pub fn cmd_simulate(
    spec: &SystemSpec,
    gait: &Gait,
    samples_per_swing: usize,
) -> Result<FileSet, CliError> {
    check_samples(samples_per_swing)?;
    let trajectory = reconstruct_trajectory(spec, gait, samples_per_swing)?;
    let decomposition = reduce(spec, gait)?;
    let panel_z = displacement_from_subgaits(spec, &decomposition)?;
    let z = trajectory.displacement();

    let mut csv = Csv::new("time,x,y,theta,mode,alpha");
    for sample in trajectory.samples() {
        csv.row([
            fmt_float(sample.time),
            fmt_float(sample.pose.x),
            fmt_float(sample.pose.y),
            fmt_float(sample.pose.theta),
            sample.mode.pinned_leg().to_string(),
            fmt_float(sample.alpha),
        ]);
    }

    let summary = SimulateSummary {
        z_x: z.x,
        z_y: z.y,
        duration: trajectory.duration(),
        panel_z_x: panel_z.x,
        panel_z_y: panel_z.y,
        stokes_residual: (z - panel_z).norm(),
        decomposition: decomposition
            .subgaits
            .iter()
            .map(|sg| SubGaitRecord::new(spec, sg))
            .collect(),
    };

    let mut files = FileSet::default();
    files.add("trajectory.csv", csv.finish());
    files.add("summary.json", to_json_file(&summary));
    Ok(files)
}

/// Tabulate optimal swing amplitudes.
///
/// With ratios, one row per swing-to-switch time ratio via the coupled
/// stationarity equation. Without, a single row for the walker's own servo
/// rate and switch time; a zero switch time makes the implied ratio infinite
/// and parks the optimum on the lower amplitude floor.
pub fn cmd_optimize(spec: &SystemSpec, ratios: Option<Vec<f64>>) -> Result<FileSet, CliError> {
    let mut csv = Csv::new("ratio,alpha_hat_star_rad,switch_time,effectiveness,boundary");
    match ratios {
        Some(list) => {
            if list.is_empty() {
                return Err(CliError::Validation("ratio list is empty".into()));
            }
            for row in sweep_ratio(spec, &list)? {
                csv.row([
                    fmt_float(row.ratio),
                    fmt_float(row.alpha_hat),
                    fmt_float(row.switch_time),
                    fmt_float(row.effectiveness),
                    row.boundary.to_string(),
                ]);
            }
        }
        None => {
            let optimum = optimal_amplitude(spec)?;
            let ratio = if spec.switch_time() == 0.0 {
                f64::INFINITY
            } else {
                2.0 * optimum.alpha_hat / (spec.servo_rate() * spec.switch_time())
            };
            csv.row([
                fmt_float(ratio),
                fmt_float(optimum.alpha_hat),
                fmt_float(spec.switch_time()),
                fmt_float(optimum.effectiveness),
                optimum.boundary.to_string(),
            ]);
        }
    }
    let mut files = FileSet::default();
    files.add("sweep.csv", csv.finish());
    Ok(files)
}

#[derive(Serialize)]
struct ReduceSummary {
    subgait_count: usize,
    panel_z_x: f64,
    panel_z_y: f64,
    gait_z_x: f64,
    gait_z_y: f64,
    lifted_z_x: Option<f64>,
    lifted_z_y: Option<f64>,
    round_trip_residual: f64,
}

/// Rewrite a gait as signed sub-gaits, lift the result back into an
/// executable gait, and report the round-trip displacement residual.
pub fn cmd_reduce(
    spec: &SystemSpec,
    gait: &Gait,
    samples_per_swing: usize,
) -> Result<FileSet, CliError> {
    check_samples(samples_per_swing)?;
    let decomposition = reduce(spec, gait)?;
    let gait_z = reconstruct_trajectory(spec, gait, samples_per_swing)?.displacement();
    let panel_z = displacement_from_subgaits(spec, &decomposition)?;

    let mut csv = Csv::new("sign,mode_i,mode_j,alpha_minus,alpha_plus,z_x,z_y");
    for sg in &decomposition.subgaits {
        let record = SubGaitRecord::new(spec, sg);
        csv.row([
            record.sign.to_string(),
            record.mode_i.to_string(),
            record.mode_j.to_string(),
            fmt_float(record.alpha_minus),
            fmt_float(record.alpha_plus),
            fmt_float(record.z_x),
            fmt_float(record.z_y),
        ]);
    }

    let mut files = FileSet::default();
    files.add("decomposition.csv", csv.finish());

    // An all-transit gait reduces to nothing; there is no loop content to
    // lift, and the decomposition claims zero displacement.
    let lifted_z = if decomposition.is_empty() {
        None
    } else {
        let lifted = lift(spec, &decomposition)?;
        let z = reconstruct_trajectory(spec, &lifted, samples_per_swing)?.displacement();
        files.add("lifted_gait.json", to_json_file(&lifted));
        Some(z)
    };

    let summary = ReduceSummary {
        subgait_count: decomposition.len(),
        panel_z_x: panel_z.x,
        panel_z_y: panel_z.y,
        gait_z_x: gait_z.x,
        gait_z_y: gait_z.y,
        lifted_z_x: lifted_z.map(|z| z.x),
        lifted_z_y: lifted_z.map(|z| z.y),
        round_trip_residual: (lifted_z.unwrap_or_else(|| Vector2::new(0.0, 0.0)) - gait_z).norm(),
    };
    files.add("summary.json", to_json_file(&summary));
    Ok(files)
}

fn check_samples(samples_per_swing: usize) -> Result<(), CliError> {
    if samples_per_swing == 0 {
        return Err(CliError::Validation(
            "trajectory.samples_per_swing must be at least 1".into(),
        ));
    }
    Ok(())
}
