//! The invariant suite behind `verify`.

use std::f64::consts::PI;

use conemetric::families::{constraint_residual, heart_apex_image};
use conemetric::geodesics::{radial_length, three_football_lengths, trace_radial_preimage};
use conemetric::metric::CURVATURE_STEP;
use conemetric::{ConformalDensity, ExtendedComplex, MetricParams, PointKind};
use num_complex::Complex64;

use crate::config::{FamilyConfig, RunConfig, ThreeFbConfig};

/// Relative tolerance of the cone-angle estimates.
pub const CONE_ANGLE_TOL: f64 = 1e-2;
/// Distance within which computed zeros must match their expected positions.
pub const ZERO_TOL: f64 = 1e-9;
/// Relative tolerance between the two density formulas.
pub const EQUIVALENCE_TOL: f64 = 1e-12;
/// Relative tolerance of the gradient identities checked by finite differences.
pub const GRADIENT_TOL: f64 = 1e-6;
/// Grid points closer than this to a singular point are skipped by the stencil checks.
pub const SINGULAR_CLEARANCE: f64 = 0.1;

const CONE_EPS: f64 = 1e-3;
const CONE_SAMPLES: usize = 1024;
const TRACE_STEPS: usize = 400;
const GRADIENT_STEP: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &'static str, outcome: Result<f64, String>, tolerance: f64) -> Self {
        match outcome {
            Ok(residual) => Check { name, residual, tolerance, detail: None },
            Err(e) => Check { name, residual: f64::NAN, tolerance, detail: Some(e) },
        }
    }

    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("{status}  {:<22} max residual {:.3e}  tol {:.1e}", self.name, self.residual, self.tolerance);
        if let Some(d) = &self.detail {
            line.push_str(&format!("  ({d})"));
        }
        line
    }
}

fn origin() -> ExtendedComplex {
    ExtendedComplex::finite(0.0, 0.0)
}

fn max_of(values: impl IntoIterator<Item = Result<f64, String>>) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for v in values {
        let v = v?;
        if v.is_nan() {
            return Err("NaN residual".into());
        }
        worst = worst.max(v);
    }
    Ok(worst)
}

/// Expected residues and cone angles of the configured family.
struct Dictionary {
    residues: Vec<(ExtendedComplex, f64)>,
    zeros: Vec<Complex64>,
    cone_angles: Vec<(ExtendedComplex, f64)>,
}

fn dictionary(family: &FamilyConfig) -> Dictionary {
    match family {
        FamilyConfig::Heart(h) => {
            let (beta, gamma) = (h.beta, h.gamma());
            let pole = ExtendedComplex::Finite(h.gamma_pole());
            let one = ExtendedComplex::finite(1.0, 0.0);
            Dictionary {
                residues: vec![(one, beta), (pole, gamma), (ExtendedComplex::Infinity, -1.0)],
                zeros: vec![Complex64::new(0.0, 0.0)],
                cone_angles: vec![(one, 2.0 * PI * beta), (pole, 2.0 * PI * gamma), (origin(), 4.0 * PI), (ExtendedComplex::Infinity, 2.0 * PI)],
            }
        }
        FamilyConfig::ThreeFb(t) => {
            let a = t.angles();
            let p = t.poles();
            let (pa, pb, pg) = (ExtendedComplex::Finite(p.alpha), ExtendedComplex::Finite(p.beta), ExtendedComplex::Finite(p.gamma));
            let one = ExtendedComplex::finite(1.0, 0.0);
            Dictionary {
                residues: vec![(pa, a.alpha + a.beta), (pb, -a.beta), (pg, a.gamma), (ExtendedComplex::Infinity, -(a.alpha + a.gamma))],
                zeros: vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
                cone_angles: vec![
                    (pa, 2.0 * PI * (a.alpha + a.beta)),
                    (pb, 2.0 * PI * a.beta),
                    (pg, 2.0 * PI * a.gamma),
                    (origin(), 4.0 * PI),
                    (one, 4.0 * PI),
                    (ExtendedComplex::Infinity, 2.0 * PI * (a.alpha + a.gamma)),
                ],
            }
        }
    }
}

fn residue_check(metric: &MetricParams, dict: &Dictionary) -> Result<f64, String> {
    let form = &metric.form;
    let sum: f64 = form.poles().iter().map(|p| p.residue).sum::<f64>() + form.residue_at_infinity();
    let mut worst = sum.abs();
    for (point, expected) in &dict.residues {
        let got = match form.classify(*point, 1e-9).map_err(|e| e.to_string())? {
            PointKind::Pole { residue } => residue,
            other => return Err(format!("{point} is {other:?}, expected a pole")),
        };
        worst = worst.max((got - expected).abs());
    }
    Ok(worst)
}

fn zero_check(metric: &MetricParams, dict: &Dictionary) -> Result<f64, String> {
    let zeros = metric.form.finite_zeros().map_err(|e| e.to_string())?;
    max_of(dict.zeros.iter().map(|want| {
        zeros
            .iter()
            .filter(|(_, order)| *order == 1)
            .filter_map(|(z, _)| z.as_finite())
            .map(|z| (z - want).norm())
            .reduce(f64::min)
            .ok_or_else(|| format!("no simple zero near {want}"))
    }))
}

fn constraint_check(t: &ThreeFbConfig) -> Result<f64, String> {
    let p = t.poles();
    let (r0, r1) = constraint_residual(&t.angles(), p.alpha, p.beta, p.gamma);
    Ok(r0.max(r1))
}

fn clear_points(metric: &MetricParams, config: &RunConfig) -> Vec<Complex64> {
    let singular = metric.singular_points();
    config.grid.points().filter(|z| singular.iter().all(|s| (z - s).norm() > SINGULAR_CLEARANCE)).collect()
}

fn curvature_check(metric: &MetricParams, points: &[Complex64]) -> Result<f64, String> {
    max_of(points.iter().map(|&z| metric.gauss_curvature_fd(z, CURVATURE_STEP).map(|k| (k - 1.0).abs()).map_err(|e| e.to_string())))
}

fn cone_angle_check(metric: &MetricParams, dict: &Dictionary) -> Result<f64, String> {
    max_of(dict.cone_angles.iter().map(|(p, want)| {
        let got = metric.cone_angle_estimate(*p, CONE_EPS, CONE_SAMPLES).map_err(|e| format!("{p}: {e}"))?;
        Ok((got - want).abs() / want)
    }))
}

fn traced(metric: &MetricParams, a: ExtendedComplex, b: ExtendedComplex) -> Result<f64, String> {
    trace_radial_preimage(metric, a, b, TRACE_STEPS).map(|p| p.length).map_err(|e| format!("trace {a} -> {b}: {e}"))
}

fn length_check(family: &FamilyConfig, metric: &MetricParams) -> Result<f64, String> {
    let inf = ExtendedComplex::Infinity;
    match family {
        FamilyConfig::Heart(h) => {
            let closed = 2.0 * heart_apex_image(h).atan();
            let pole = ExtendedComplex::Finite(h.gamma_pole());
            let one = ExtendedComplex::finite(1.0, 0.0);
            let l01 = radial_length(metric, origin(), one);
            let l0p = radial_length(metric, origin(), pole);
            let l0inf = radial_length(metric, origin(), inf);
            max_of([
                Ok((l01 - closed).abs()),
                Ok((l0p - closed).abs()),
                Ok((l01 + l0inf - PI).abs()),
                traced(metric, origin(), one).map(|l| (l - l01).abs()),
                traced(metric, origin(), pole).map(|l| (l - l0p).abs()),
                traced(metric, origin(), inf).map(|l| (l - l0inf).abs()),
            ])
        }
        FamilyConfig::ThreeFb(_) => {
            let one = ExtendedComplex::finite(1.0, 0.0);
            let (ell1, ell2) = three_football_lengths(metric);
            max_of([
                Ok((radial_length(metric, one, inf) - ell1).abs()),
                Ok((radial_length(metric, origin(), inf) - ell2).abs()),
                traced(metric, one, inf).map(|l| (l - ell1).abs()),
                traced(metric, origin(), inf).map(|l| (l - ell2).abs()),
            ])
        }
    }
}

fn equivalence_check(metric: &MetricParams, points: &[Complex64]) -> Result<f64, String> {
    max_of(points.iter().map(|&z| {
        let a = metric.density_at(z).map_err(|e| e.to_string())?;
        let b = metric.density_via_developing(z).map_err(|e| e.to_string())?;
        Ok((a - b).abs() / a.abs().max(f64::MIN_POSITIVE))
    }))
}

fn phi_gradient_check(metric: &MetricParams, points: &[Complex64]) -> Result<f64, String> {
    max_of(points.iter().map(|&z| metric.phi_gradient_check(z, GRADIENT_STEP).map_err(|e| e.to_string())))
}

/// `∂_z log λ = ½(∂_x - i∂_y) ½ ln λ²` by central differences.
fn log_lambda_check(metric: &MetricParams, points: &[Complex64]) -> Result<f64, String> {
    let h = GRADIENT_STEP;
    max_of(points.iter().map(|&z| {
        let half_log = |w: Complex64| metric.density_at(w).map(|d| 0.5 * d.ln()).map_err(|e| e.to_string());
        let dx = (half_log(z + h)? - half_log(z - h)?) / (2.0 * h);
        let dy = (half_log(z + Complex64::new(0.0, h))? - half_log(z - Complex64::new(0.0, h))?) / (2.0 * h);
        let fd = Complex64::new(dx, -dy) * 0.5;
        let analytic = metric.log_lambda_dz(z).map_err(|e| e.to_string())?;
        Ok((analytic - fd).norm() / analytic.norm().max(1.0))
    }))
}

/// Runs every check for `config`.
pub fn run_checks(config: &RunConfig) -> Vec<Check> {
    let metric = config.family.metric();
    let dict = dictionary(&config.family);
    let tol = &config.tolerances;
    let points = clear_points(&metric, config);
    let mut checks =
        vec![Check::new("residues", residue_check(&metric, &dict), tol.residual_tol), Check::new("zeros", zero_check(&metric, &dict), ZERO_TOL)];
    if let FamilyConfig::ThreeFb(t) = &config.family {
        checks.push(Check::new("constraint residuals", constraint_check(t), tol.residual_tol));
    }
    checks.extend([
        Check::new("curvature grid", curvature_check(&metric, &points), tol.curvature_tol),
        Check::new("cone angles", cone_angle_check(&metric, &dict), CONE_ANGLE_TOL),
        Check::new("length identities", length_check(&config.family, &metric), tol.length_tol),
        Check::new("metric equivalence", equivalence_check(&metric, &points), EQUIVALENCE_TOL),
        Check::new("dPhi identity", phi_gradient_check(&metric, &points), GRADIENT_TOL),
        Check::new("log-lambda derivative", log_lambda_check(&metric, &points), GRADIENT_TOL),
    ]);
    checks
}

pub fn describe(family: &FamilyConfig) -> String {
    match family {
        FamilyConfig::Heart(h) => format!("heart beta={} gamma={} c={}", h.beta, h.gamma(), h.c_log),
        FamilyConfig::ThreeFb(t) => {
            let a = t.angles();
            let p = t.poles();
            let source = match t {
                ThreeFbConfig::Solved(s) => format!("branch={}", if s.branch == conemetric::BranchChoice::Plus { "plus" } else { "minus" }),
                ThreeFbConfig::Explicit { .. } => "explicit poles".to_string(),
            };
            format!("threefb alpha={} beta={} gamma={} P_alpha={} P_beta={} P_gamma={} {source}", a.alpha, a.beta, a.gamma, p.alpha, p.beta, p.gamma)
        }
    }
}
