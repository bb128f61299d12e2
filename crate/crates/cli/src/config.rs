//! Run configuration assembled from a flat JSON file and command-line flags.

use std::path::{Path, PathBuf};

use clap::Args;
use conemetric::families::{three_football_form, unchecked_three_football_form};
use conemetric::{AngleTriple, BranchChoice, GridSpec, HeartParams, MetricParams, PoleTriple, ThreeFootballParams};
use num_complex::Complex64;
use serde::Deserialize;

use crate::CliError;

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct SharedArgs {
    /// Family to build: heart or threefb.
    #[arg(long)]
    pub family: Option<String>,
    /// Cone-angle parameter β (heart: in (0, 1)).
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Heart log-scale c, with |F|² scaled by e^c.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Three-football angle parameter α.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Three-football angle parameter γ.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// Pole position P_β, written a+bi.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub pbeta: Option<Complex64>,
    /// Explicit P_α, bypassing the constraint solver (requires --pgamma).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub palpha: Option<Complex64>,
    /// Explicit P_γ, bypassing the constraint solver (requires --palpha).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub pgamma: Option<Complex64>,
    /// Scale of the developing map.
    #[arg(long, allow_hyphen_values = true)]
    pub camp: Option<f64>,
    /// Root of the P_γ quadratic: plus or minus.
    #[arg(long)]
    pub branch: Option<String>,
    /// Use the special angle relation α = γ = 1, β = (1+√2)/2.
    #[arg(long)]
    pub special: bool,
    /// Sampling grid x0,x1,y0,y1,nx,ny.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Flat JSON configuration file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// The configuration file: one flat JSON object with the keys below.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    family: Option<String>,
    beta: Option<f64>,
    c_log: Option<f64>,
    alpha: Option<f64>,
    gamma: Option<f64>,
    p_beta_re: Option<f64>,
    p_beta_im: Option<f64>,
    p_alpha_re: Option<f64>,
    p_alpha_im: Option<f64>,
    p_gamma_re: Option<f64>,
    p_gamma_im: Option<f64>,
    branch: Option<BranchChoice>,
    c_amp: Option<f64>,
    special: Option<bool>,
    x_min: Option<f64>,
    x_max: Option<f64>,
    y_min: Option<f64>,
    y_max: Option<f64>,
    nx: Option<usize>,
    ny: Option<usize>,
    curvature_tol: Option<f64>,
    length_tol: Option<f64>,
    residual_tol: Option<f64>,
    output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub curvature_tol: f64,
    pub length_tol: f64,
    pub residual_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { curvature_tol: 5e-3, length_tol: 1e-6, residual_tol: 1e-10 }
    }
}

/// A three-football configuration, either solved from `P_β` or with all
/// three poles given explicitly.
#[derive(Debug, Clone, PartialEq)]
pub enum ThreeFbConfig {
    Solved(ThreeFootballParams),
    Explicit { angles: AngleTriple, poles: PoleTriple, c_amp: f64 },
}

impl ThreeFbConfig {
    pub fn angles(&self) -> AngleTriple {
        match self {
            ThreeFbConfig::Solved(p) => p.angles,
            ThreeFbConfig::Explicit { angles, .. } => *angles,
        }
    }

    pub fn poles(&self) -> PoleTriple {
        match self {
            ThreeFbConfig::Solved(p) => p.poles(),
            ThreeFbConfig::Explicit { poles, .. } => *poles,
        }
    }

    pub fn metric(&self) -> MetricParams {
        match self {
            ThreeFbConfig::Solved(p) => p.metric(),
            ThreeFbConfig::Explicit { angles, poles, c_amp } => {
                let form = unchecked_three_football_form(angles, poles.alpha, poles.beta, poles.gamma).expect("validated on construction");
                MetricParams::new(form, 2.0 * c_amp.ln())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyConfig {
    Heart(HeartParams),
    ThreeFb(ThreeFbConfig),
}

impl FamilyConfig {
    pub fn metric(&self) -> MetricParams {
        match self {
            FamilyConfig::Heart(h) => h.metric(),
            FamilyConfig::ThreeFb(t) => t.metric(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub family: FamilyConfig,
    pub grid: GridSpec,
    pub tolerances: Tolerances,
    pub output_dir: PathBuf,
}

/// Parses `a+bi`, `a-bi`, `a` or `bi` (no spaces).
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let bad = || format!("'{text}' is not a complex number of the form a+bi");
    let Some(body) = text.strip_suffix('i') else {
        return text.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |s: &str| -> Result<f64, String> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| bad())?;
            Ok(Complex64::new(re, imag(&body[k..])?))
        }
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// Parses `x0,x1,y0,y1,nx,ny`.
pub fn parse_grid(text: &str) -> Result<GridSpec, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    let bad = || CliError::Invalid(format!("--grid expects x0,x1,y0,y1,nx,ny, got '{text}'"));
    if parts.len() != 6 {
        return Err(bad());
    }
    let mut bounds = [0.0; 4];
    for (slot, part) in bounds.iter_mut().zip(&parts[..4]) {
        *slot = part.parse().map_err(|_| bad())?;
    }
    let nx = parts[4].parse().map_err(|_| bad())?;
    let ny = parts[5].parse().map_err(|_| bad())?;
    Ok(GridSpec { x_min: bounds[0], x_max: bounds[1], y_min: bounds[2], y_max: bounds[3], nx, ny })
}

fn read_file_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("config {}: {e}", path.display())))
}

fn pair(re: Option<f64>, im: Option<f64>, name: &str) -> Result<Option<Complex64>, CliError> {
    match (re, im) {
        (None, None) => Ok(None),
        (Some(re), Some(im)) => Ok(Some(Complex64::new(re, im))),
        _ => Err(CliError::Invalid(format!("config needs both {name}_re and {name}_im"))),
    }
}

fn invalid(e: conemetric::Error) -> CliError {
    CliError::Invalid(e.to_string())
}

impl RunConfig {
    /// Merges the optional config file with the flags and validates the result.
    pub fn resolve(args: &SharedArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => read_file_config(path)?,
            None => FileConfig::default(),
        };
        let family =
            args.family.clone().or_else(|| file.family.clone()).ok_or_else(|| CliError::Invalid("--family is required (heart or threefb)".into()))?;
        let beta = args.beta.or(file.beta);
        let family = match family.as_str() {
            "heart" => {
                for (flag, set) in [
                    ("--alpha", args.alpha.or(file.alpha).is_some()),
                    ("--gamma", args.gamma.or(file.gamma).is_some()),
                    ("--pbeta", args.pbeta.is_some() || file.p_beta_re.is_some()),
                    ("--palpha", args.palpha.is_some() || file.p_alpha_re.is_some()),
                    ("--pgamma", args.pgamma.is_some() || file.p_gamma_re.is_some()),
                    ("--camp", args.camp.or(file.c_amp).is_some()),
                    ("--branch", args.branch.is_some() || file.branch.is_some()),
                    ("--special", args.special || file.special == Some(true)),
                ] {
                    if set {
                        return Err(CliError::Invalid(format!("{flag} does not apply to the heart family")));
                    }
                }
                let beta = beta.ok_or_else(|| CliError::Invalid("--beta is required for the heart family".into()))?;
                let c_log = args.c.or(file.c_log).unwrap_or(0.0);
                FamilyConfig::Heart(HeartParams::new(beta, c_log).map_err(invalid)?)
            }
            "threefb" => FamilyConfig::ThreeFb(resolve_threefb(args, &file, beta)?),
            other => return Err(CliError::Invalid(format!("unknown family '{other}' (expected heart or threefb)"))),
        };

        let grid = match &args.grid {
            Some(text) => parse_grid(text)?,
            None => GridSpec {
                x_min: file.x_min.unwrap_or(-2.0),
                x_max: file.x_max.unwrap_or(2.0),
                y_min: file.y_min.unwrap_or(-2.0),
                y_max: file.y_max.unwrap_or(2.0),
                nx: file.nx.unwrap_or(41),
                ny: file.ny.unwrap_or(41),
            },
        };
        grid.validate().map_err(invalid)?;

        let defaults = Tolerances::default();
        let tolerances = Tolerances {
            curvature_tol: file.curvature_tol.unwrap_or(defaults.curvature_tol),
            length_tol: file.length_tol.unwrap_or(defaults.length_tol),
            residual_tol: file.residual_tol.unwrap_or(defaults.residual_tol),
        };
        for (name, v) in
            [("curvature_tol", tolerances.curvature_tol), ("length_tol", tolerances.length_tol), ("residual_tol", tolerances.residual_tol)]
        {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Invalid(format!("{name} must be positive, got {v}")));
            }
        }
        let output_dir = args.out.clone().or_else(|| file.output_dir.clone()).unwrap_or_else(|| PathBuf::from("."));
        Ok(RunConfig { family, grid, tolerances, output_dir })
    }
}

fn resolve_threefb(args: &SharedArgs, file: &FileConfig, beta: Option<f64>) -> Result<ThreeFbConfig, CliError> {
    if args.c.or(file.c_log).is_some() {
        return Err(CliError::Invalid("--c applies to the heart family; use --camp for threefb".into()));
    }
    let special = args.special || file.special == Some(true);
    let alpha = args.alpha.or(file.alpha);
    let gamma = args.gamma.or(file.gamma);
    let angles = if special {
        let expected = AngleTriple::special(1.0).map_err(invalid)?;
        for (flag, given, want) in [("--alpha", alpha, expected.alpha), ("--beta", beta, expected.beta), ("--gamma", gamma, expected.gamma)] {
            if given.is_some_and(|v| (v - want).abs() > 1e-12 * want) {
                return Err(CliError::Invalid(format!("{flag} conflicts with --special, which fixes it to {want}")));
            }
        }
        expected
    } else {
        match (alpha, beta, gamma) {
            (Some(a), Some(b), Some(g)) => AngleTriple::new(a, b, g).map_err(invalid)?,
            _ => return Err(CliError::Invalid("threefb needs --alpha, --beta and --gamma, or --special".into())),
        }
    };
    let p_beta = match args.pbeta {
        Some(p) => p,
        None => pair(file.p_beta_re, file.p_beta_im, "p_beta")?.ok_or_else(|| CliError::Invalid("--pbeta is required for threefb".into()))?,
    };
    let branch = match &args.branch {
        Some(text) => text.parse().map_err(invalid)?,
        None => file.branch.unwrap_or(BranchChoice::Minus),
    };
    let c_amp = args.camp.or(file.c_amp).unwrap_or(1.0);
    if !(c_amp.is_finite() && c_amp > 0.0) {
        return Err(CliError::Invalid(format!("--camp must be a positive real, got {c_amp}")));
    }
    let p_alpha = match args.palpha {
        Some(p) => Some(p),
        None => pair(file.p_alpha_re, file.p_alpha_im, "p_alpha")?,
    };
    let p_gamma = match args.pgamma {
        Some(p) => Some(p),
        None => pair(file.p_gamma_re, file.p_gamma_im, "p_gamma")?,
    };
    match (p_alpha, p_gamma) {
        (None, None) => Ok(ThreeFbConfig::Solved(ThreeFootballParams::new(angles, p_beta, branch, c_amp).map_err(invalid)?)),
        (Some(pa), Some(pg)) => {
            if let Err(e) = three_football_form(&angles, pa, p_beta, pg) {
                if !matches!(e, conemetric::Error::ConstraintViolated(..)) {
                    return Err(invalid(e));
                }
            }
            Ok(ThreeFbConfig::Explicit { angles, poles: PoleTriple { alpha: pa, beta: p_beta, gamma: pg }, c_amp })
        }
        _ => Err(CliError::Invalid("--palpha and --pgamma must be given together".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_syntax() {
        assert_eq!(parse_complex("0.3+0.2i").unwrap(), Complex64::new(0.3, 0.2));
        assert_eq!(parse_complex("0.5-0.4i").unwrap(), Complex64::new(0.5, -0.4));
        assert_eq!(parse_complex("-1e-3+2.5e2i").unwrap(), Complex64::new(-1e-3, 250.0));
        assert_eq!(parse_complex("1.5e-2").unwrap(), Complex64::new(0.015, 0.0));
        assert_eq!(parse_complex("-2i").unwrap(), Complex64::new(0.0, -2.0));
        assert_eq!(parse_complex("1-i").unwrap(), Complex64::new(1.0, -1.0));
        for bad in ["", "i2", "0.3 + 0.2i", "a+bi", "1+2j"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn grid_syntax() {
        let g = parse_grid("-1,1,-0.5,0.5,3,4").unwrap();
        assert_eq!((g.x_min, g.x_max, g.y_min, g.y_max, g.nx, g.ny), (-1.0, 1.0, -0.5, 0.5, 3, 4));
        assert!(parse_grid("0,1,0,1,2").is_err());
        assert!(parse_grid("0,1,0,1,2,x").is_err());
    }
}
