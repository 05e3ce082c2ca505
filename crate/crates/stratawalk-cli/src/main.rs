//! Command-line front end: stratified-panel analysis of contact-switching
//! planar walkers.
//!
//! Four subcommands share one JSON config: `panels` exports displacement
//! densities and curvature grids, `simulate` reconstructs a gait trajectory,
//! `optimize` tabulates speed-optimal swing amplitudes, and `reduce`
//! rewrites a gait as signed mode-pair blocks and lifts it back.
//!
//! Exit codes: 0 success, 1 usage, 2 invalid input data, 3 runtime failure.

mod commands;
mod config;
mod output;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use commands::CliError;
use config::{Config, GridConfig};
use stratawalk::gait::Gait;

#[derive(Parser)]
#[command(
    name = "stratawalk",
    version,
    about = "Stratified-panel analysis of contact-switching planar walkers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Export panel densities and curvature grids for contact-mode pairs
    Panels(PanelsArgs),
    /// Reconstruct a gait's body trajectory and displacement summary
    Simulate(GaitCmdArgs),
    /// Tabulate speed-optimal swing amplitudes
    Optimize(OptimizeArgs),
    /// Rewrite a gait as signed sub-gaits and lift it back
    Reduce(GaitCmdArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Walker configuration file (JSON)
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Directory for output files (created if missing)
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct PanelsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Ordered mode pair "I,J"; default: every cyclically adjacent pair
    #[arg(long, value_name = "I,J")]
    pair: Option<String>,
    /// Grid resolution "NA,NB"; overrides the config's grid block
    #[arg(long, value_name = "NA,NB")]
    grid: Option<String>,
}

#[derive(Args)]
struct GaitCmdArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Gait file (JSON); default: the config's gait block
    #[arg(long, value_name = "PATH")]
    gait: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated swing-to-switch time ratios
    #[arg(long, value_name = "LIST", conflicts_with = "ratio_range")]
    ratios: Option<String>,
    /// Log-spaced ratio range "LO:HI:N"
    #[arg(long, value_name = "LO:HI:N")]
    ratio_range: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version surface as clap "errors" but are not.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(report) => {
            println!("{report}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    let (common, files) = match &cli.command {
        Command::Panels(args) => {
            let config = load_config(&args.common.config)?;
            let spec = config.to_spec()?;
            let grid = match &args.grid {
                Some(text) => parse_grid(text)?,
                None => config.grid(),
            };
            let pair = args.pair.as_deref().map(parse_pair).transpose()?;
            (&args.common, commands::cmd_panels(&spec, grid, pair)?)
        }
        Command::Simulate(args) => {
            let config = load_config(&args.common.config)?;
            let spec = config.to_spec()?;
            let gait = load_gait(args.gait.as_deref(), &config)?;
            (
                &args.common,
                commands::cmd_simulate(&spec, &gait, config.samples_per_swing())?,
            )
        }
        Command::Optimize(args) => {
            let config = load_config(&args.common.config)?;
            let spec = config.to_spec()?;
            let ratios = match (&args.ratios, &args.ratio_range) {
                (Some(list), _) => Some(parse_ratio_list(list)?),
                (None, Some(range)) => Some(parse_ratio_range(range)?),
                (None, None) => config.sweep.as_ref().map(|s| s.ratios.clone()),
            };
            (&args.common, commands::cmd_optimize(&spec, ratios)?)
        }
        Command::Reduce(args) => {
            let config = load_config(&args.common.config)?;
            let spec = config.to_spec()?;
            let gait = load_gait(args.gait.as_deref(), &config)?;
            (
                &args.common,
                commands::cmd_reduce(&spec, &gait, config.samples_per_swing())?,
            )
        }
    };
    files
        .write_all(&common.out)
        .map_err(|e| CliError::Failure(format!("cannot write outputs to {}: {e}", common.out.display())))?;
    Ok(files.describe(&common.out))
}

fn load_config(path: &Path) -> Result<Config, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_json(&text, "config")
}

fn load_gait(path: Option<&Path>, config: &Config) -> Result<Gait, CliError> {
    match path {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read gait {}: {e}", path.display())))?;
            parse_json(&text, "gait")
        }
        None => config.gait.clone().ok_or_else(|| {
            CliError::Usage("no gait given: pass --gait or add a gait block to the config".into())
        }),
    }
}

/// Malformed JSON is the caller holding the tool wrong (exit 1); well-formed
/// JSON with the wrong shape or values is invalid data (exit 2).
fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Syntax | Category::Eof | Category::Io => {
                CliError::Usage(format!("{what} is not valid JSON: {e}"))
            }
            Category::Data => CliError::Validation(format!("invalid {what}: {e}")),
        }
    })
}

fn parse_pair(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("expected --pair I,J with leg numbers, got \"{text}\""));
    let (i, j) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        i.trim().parse().map_err(|_| bad())?,
        j.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_grid(text: &str) -> Result<GridConfig, CliError> {
    let bad = || CliError::Usage(format!("expected --grid NA,NB with sample counts, got \"{text}\""));
    let (na, nb) = text.split_once(',').ok_or_else(bad)?;
    Ok(GridConfig {
        n_alpha: na.trim().parse().map_err(|_| bad())?,
        n_beta: nb.trim().parse().map_err(|_| bad())?,
    })
}

fn parse_ratio_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<f64>().map_err(|_| {
                CliError::Usage(format!("expected --ratios as comma-separated numbers, got \"{part}\""))
            })
        })
        .collect()
}

fn parse_ratio_range(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("expected --ratio-range LO:HI:N, got \"{text}\""));
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, n] = parts.as_slice() else {
        return Err(bad());
    };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi && n >= 1) {
        return Err(CliError::Validation(format!(
            "invalid ratio range {lo}:{hi}:{n}: need 0 < LO <= HI and N >= 1"
        )));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
    Ok((0..n)
        .map(|k| {
            if k == 0 {
                lo
            } else if k == n - 1 {
                hi
            } else {
                (ln_lo + (ln_hi - ln_lo) * k as f64 / (n - 1) as f64).exp()
            }
        })
        .collect())
}
