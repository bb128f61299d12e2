//! Command-line front end for the `conemetric` library: verification suites,
//! geodesic reports, CSV grids and SVG plots.

pub mod config;
pub mod plot;
pub mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use conemetric::families::heart_apex_image;
use conemetric::geodesics::{radial_length, triangle_report};
use conemetric::metric::{write_grid_csv, CURVATURE_STEP};
use conemetric::ExtendedComplex;
use serde::Serialize;

use crate::config::{FamilyConfig, RunConfig, SharedArgs};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

pub const GRID_FILE: &str = "grid.csv";
pub const PLOT_FILE: &str = "plot.svg";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Failed(_) => EXIT_FAILURE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "conemetric", version, about = "Spherical cone metrics from character 1-forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the invariant checks and print one line per check.
    Verify(SharedArgs),
    /// Print the geodesic report as JSON.
    Report(SharedArgs),
    /// Write grid.csv with phi, density and curvature on the grid.
    Sample(SharedArgs),
    /// Write plot.svg with singular points, level sets of |F| and geodesics.
    Plot(SharedArgs),
}

/// Lengths of the heart family, all determined by `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeartReport {
    pub c: f64,
    pub w0_modulus: f64,
    #[serde(rename = "L01")]
    pub l01: f64,
    #[serde(rename = "L0inf")]
    pub l0inf: f64,
}

fn heart_report(h: &conemetric::HeartParams) -> HeartReport {
    let metric = h.metric();
    let origin = ExtendedComplex::finite(0.0, 0.0);
    HeartReport {
        c: h.c_log,
        w0_modulus: heart_apex_image(h),
        l01: radial_length(&metric, origin, ExtendedComplex::finite(1.0, 0.0)),
        l0inf: radial_length(&metric, origin, ExtendedComplex::Infinity),
    }
}

/// The JSON printed by `report`.
pub fn report_json(config: &RunConfig) -> Result<String, CliError> {
    let json = match &config.family {
        FamilyConfig::Heart(h) => serde_json::to_string(&heart_report(h)),
        FamilyConfig::ThreeFb(t) => {
            let report = triangle_report(&t.metric()).map_err(|e| CliError::Failed(e.to_string()))?;
            serde_json::to_string(&report)
        }
    };
    json.map_err(|e| CliError::Failed(e.to_string()))
}

fn prepare_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Invalid(format!("cannot create output directory {}: {e}", dir.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display())))
}

/// Samples the grid and writes `grid.csv` into the output directory.
pub fn sample(config: &RunConfig) -> Result<PathBuf, CliError> {
    prepare_dir(&config.output_dir)?;
    let rows = config.family.metric().sample_grid(&config.grid, CURVATURE_STEP);
    let mut buf = Vec::new();
    write_grid_csv(&rows, &mut buf).map_err(|e| CliError::Failed(e.to_string()))?;
    let path = config.output_dir.join(GRID_FILE);
    write_file(&path, &buf)?;
    Ok(path)
}

fn execute(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let io = |e: std::io::Error| CliError::Failed(e.to_string());
    match command {
        Command::Verify(args) => {
            let config = RunConfig::resolve(args)?;
            let checks = verify::run_checks(&config);
            writeln!(out, "{}", verify::describe(&config.family)).map_err(io)?;
            for check in &checks {
                writeln!(out, "{}", check.line()).map_err(io)?;
            }
            let failed = checks.iter().filter(|c| !c.passed()).count();
            if failed == 0 {
                writeln!(out, "all {} checks passed", checks.len()).map_err(io)?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "{failed} of {} checks failed", checks.len()).map_err(io)?;
                Ok(EXIT_FAILURE)
            }
        }
        Command::Report(args) => {
            let config = RunConfig::resolve(args)?;
            match report_json(&config) {
                Ok(json) => {
                    writeln!(out, "{json}").map_err(io)?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    let json = serde_json::json!({ "error": e.to_string() });
                    writeln!(out, "{json}").map_err(io)?;
                    Ok(e.exit_code())
                }
            }
        }
        Command::Sample(args) => {
            let config = RunConfig::resolve(args)?;
            let path = sample(&config)?;
            writeln!(out, "wrote {}", path.display()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Plot(args) => {
            let config = RunConfig::resolve(args)?;
            prepare_dir(&config.output_dir)?;
            let plot = plot::render(&config);
            for w in &plot.warnings {
                writeln!(err, "warning: {w}").map_err(io)?;
            }
            let path = config.output_dir.join(PLOT_FILE);
            write_file(&path, plot.svg.as_bytes())?;
            writeln!(out, "wrote {}", path.display()).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
