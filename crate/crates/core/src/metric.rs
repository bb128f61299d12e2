//! The spherical cone metric `ds² = λ²|dz|²` induced by a character form.
//!
//! With `P` the potential of the form and `x = P + c_log`,
//! `Φ = 4e^x/(1+e^x)` and `λ² = Φ(4-Φ)/4 · |f|²`. The developing map `F`
//! satisfies `|F|² = e^x` and `F'/F = f`, which gives the pullback form
//! `λ² = 4|F|²|f|²/(1+|F|²)²`.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{pole_offsets, CharacterForm, ExtendedComplex, PointKind};
use crate::quadrature::singular_ray_integral;

/// Default step of the curvature stencil.
pub const CURVATURE_STEP: f64 = 1e-4;

/// A conformal density `λ²(z)` against `|dz|²`.
pub trait ConformalDensity {
    fn density(&self, z: Complex64) -> Result<f64>;

    /// `∂_z log λ`, the coefficient of the geodesic equation `z'' = -2 (∂_z log λ) z'²`.
    fn log_lambda_dz(&self, z: Complex64) -> Result<Complex64>;

    /// Finite points where the geodesic equation is singular.
    fn singular_points(&self) -> Vec<Complex64>;
}

/// The round metric `4|dz|²/(1+|z|²)²`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RoundSphere;

impl ConformalDensity for RoundSphere {
    fn density(&self, z: Complex64) -> Result<f64> {
        let s = 1.0 + z.norm_sqr();
        Ok(4.0 / (s * s))
    }

    fn log_lambda_dz(&self, z: Complex64) -> Result<Complex64> {
        Ok(-z.conj() / (1.0 + z.norm_sqr()))
    }

    fn singular_points(&self) -> Vec<Complex64> {
        Vec::new()
    }
}

/// A character form together with the additive constant of its potential.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricParams {
    pub form: CharacterForm,
    pub c_log: f64,
}

/// `(Φ, 4 - Φ)` for `Φ = 4/(1+e^{-x})`, without overflow.
fn phi_pair(x: f64) -> (f64, f64) {
    if x > 0.0 {
        let e = (-x).exp();
        (4.0 / (1.0 + e), 4.0 * e / (1.0 + e))
    } else {
        let e = x.exp();
        (4.0 * e / (1.0 + e), 4.0 / (1.0 + e))
    }
}

/// Values at `base + offset`, with pole differences taken via [`pole_offsets`].
pub(crate) struct Local {
    pub x: f64,
    pub f: Complex64,
    pub df: Complex64,
}

impl MetricParams {
    pub fn new(form: CharacterForm, c_log: f64) -> Self {
        MetricParams { form, c_log }
    }

    pub(crate) fn local(&self, base: Complex64, offset: Complex64) -> Local {
        let poles = self.form.poles();
        let diffs = pole_offsets(poles, base, offset);
        let mut x = self.c_log;
        let mut f = Complex64::new(0.0, 0.0);
        let mut df = Complex64::new(0.0, 0.0);
        for (p, d) in poles.iter().zip(diffs) {
            x += 2.0 * p.residue * d.norm().ln();
            let inv = 1.0 / d;
            f += p.residue * inv;
            df -= p.residue * inv * inv;
        }
        Local { x, f, df }
    }

    /// `λ` at `base + offset` with no pole guard.
    pub(crate) fn lambda_local(&self, base: Complex64, offset: Complex64) -> f64 {
        let l = self.local(base, offset);
        let (phi, rest) = phi_pair(l.x);
        (phi * rest / 4.0).sqrt() * l.f.norm()
    }

    /// `λ_w` of the same metric in the chart `w = 1/z`.
    pub(crate) fn lambda_at_infinity_chart(&self, w: Complex64) -> f64 {
        self.lambda_local(1.0 / w, Complex64::new(0.0, 0.0)) / w.norm_sqr()
    }

    pub fn phi_at(&self, z: Complex64) -> Result<f64> {
        self.form.guard(z)?;
        Ok(phi_pair(self.local(z, Complex64::new(0.0, 0.0)).x).0)
    }

    pub fn density_at(&self, z: Complex64) -> Result<f64> {
        self.form.guard(z)?;
        let l = self.local(z, Complex64::new(0.0, 0.0));
        let (phi, rest) = phi_pair(l.x);
        Ok(phi * rest / 4.0 * l.f.norm_sqr())
    }

    /// `|F(z)| = e^{c_log/2} Π|z - p_k|^{r_k}`, extended to poles and `∞`.
    pub fn developing_modulus(&self, z: ExtendedComplex) -> f64 {
        match z {
            ExtendedComplex::Finite(z) => {
                if let Some(p) = self.form.poles().iter().find(|p| p.position == z) {
                    return if p.residue > 0.0 { 0.0 } else { f64::INFINITY };
                }
                self.form.poles().iter().fold((0.5 * self.c_log).exp(), |acc, p| acc * (z - p.position).norm().powf(p.residue))
            }
            ExtendedComplex::Infinity => match self.form.classify(ExtendedComplex::Infinity, 0.0) {
                Ok(PointKind::Pole { residue }) if residue < 0.0 => f64::INFINITY,
                Ok(PointKind::Pole { .. }) => 0.0,
                _ => (0.5 * self.c_log).exp(),
            },
        }
    }

    /// `4|F|²|f|²/(1+|F|²)²` from the product form of `|F|`.
    pub fn density_via_developing(&self, z: Complex64) -> Result<f64> {
        let f = self.form.coefficient_at(z)?;
        let u = self.developing_modulus(z.into()).powi(2);
        let conformal = if u == 0.0 || u.is_infinite() { 0.0 } else { 4.0 / (u + 2.0 + 1.0 / u) };
        Ok(conformal * f.norm_sqr())
    }

    /// Gaussian curvature from a 5-point Laplacian of `½ ln λ²`.
    pub fn gauss_curvature_fd(&self, z: Complex64, h: f64) -> Result<f64> {
        gauss_curvature_fd(self, z, h)
    }

    /// `C(ε)/sin ρ(ε)`: circumference of the circle of chart radius `eps`
    /// around `p` over the sine of its metric radius. On a spherical cone of
    /// angle `θ` a circle of radius `ρ` has length `θ sin ρ`. `ρ` is the mean
    /// over a fixed ray and its opposite, which cancels the first-order
    /// anisotropy of `λ` around `p`.
    pub fn cone_angle_estimate(&self, p: ExtendedComplex, eps: f64, n: usize) -> Result<f64> {
        if !(1e-5..=1e-2).contains(&eps) {
            return Err(Error::BadStep(eps));
        }
        if n < 256 {
            return Err(Error::BadStep(n as f64));
        }
        let kind = self.form.classify(p, 1e-9)?;
        let ray = Complex64::from_polar(1.0, 0.3);
        let dtheta = 2.0 * std::f64::consts::PI / n as f64;
        match p {
            ExtendedComplex::Finite(z) => {
                if kind == PointKind::Regular {
                    return Err(Error::NotASingularPoint(p.to_string()));
                }
                let z = self.form.pole_near(z, 1e-9).map_or(z, |q| q.position);
                let others = self.form.poles().iter().filter(|q| q.position != z);
                if others.map(|q| (q.position - z).norm()).any(|d| d <= 2.0 * eps) {
                    return Err(Error::QuadratureNearPole(p.to_string()));
                }
                let circumference: f64 = (0..n).map(|j| self.lambda_local(z, Complex64::from_polar(eps, j as f64 * dtheta)) * eps * dtheta).sum();
                let e = kind.density_exponent();
                let radius = 0.5
                    * (singular_ray_integral(eps, e, |t| Ok(self.lambda_local(z, ray * t)))?
                        + singular_ray_integral(eps, e, |t| Ok(self.lambda_local(z, -ray * t)))?);
                Ok(circumference / radius.sin())
            }
            ExtendedComplex::Infinity => {
                if self.form.pole_positions().any(|q| q.norm() * eps >= 0.5) {
                    return Err(Error::QuadratureNearPole(p.to_string()));
                }
                let circumference: f64 =
                    (0..n).map(|j| self.lambda_at_infinity_chart(Complex64::from_polar(eps, j as f64 * dtheta)) * eps * dtheta).sum();
                let e = kind.density_exponent();
                let radius = 0.5
                    * (singular_ray_integral(eps, e, |t| Ok(self.lambda_at_infinity_chart(ray * t)))?
                        + singular_ray_integral(eps, e, |t| Ok(self.lambda_at_infinity_chart(-ray * t)))?);
                Ok(circumference / radius.sin())
            }
        }
    }

    /// Relative residual of `∇Φ = Φ(4-Φ)/4 · (2 Re f, -2 Im f)` with a central-difference gradient.
    pub fn phi_gradient_check(&self, z: Complex64, h: f64) -> Result<f64> {
        let stencil = |w: Complex64| self.phi_at(w).map_err(|_| Error::StencilHitsSingularity(z));
        let gx = (stencil(z + h)? - stencil(z - h)?) / (2.0 * h);
        let gy = (stencil(z + Complex64::new(0.0, h))? - stencil(z - Complex64::new(0.0, h))?) / (2.0 * h);
        let phi = stencil(z)?;
        let f = self.form.coefficient_at(z).map_err(|_| Error::StencilHitsSingularity(z))?;
        let factor = phi * (4.0 - phi) / 4.0;
        let (ex, ey) = (factor * 2.0 * f.re, -factor * 2.0 * f.im);
        Ok((gx - ex).hypot(gy - ey) / gx.hypot(gy).max(1.0))
    }
}

impl ConformalDensity for MetricParams {
    fn density(&self, z: Complex64) -> Result<f64> {
        self.density_at(z)
    }

    /// `f/2 + f'/(2f) - |F|² f/(1+|F|²)`, where `|F|²/(1+|F|²) = Φ/4`.
    fn log_lambda_dz(&self, z: Complex64) -> Result<Complex64> {
        self.form.guard(z)?;
        let l = self.local(z, Complex64::new(0.0, 0.0));
        if l.f.norm() == 0.0 {
            return Err(Error::StepNearPole(0.0));
        }
        let (phi, _) = phi_pair(l.x);
        Ok(0.5 * l.f + l.df / (2.0 * l.f) - 0.25 * phi * l.f)
    }

    fn singular_points(&self) -> Vec<Complex64> {
        let mut pts: Vec<Complex64> = self.form.pole_positions().collect();
        if let Ok(zeros) = self.form.finite_zeros() {
            pts.extend(zeros.iter().filter_map(|(z, _)| z.as_finite()));
        }
        pts
    }
}

/// Gaussian curvature `-Δ(ln λ)/λ²` from a 5-point stencil of `½ ln λ²`.
pub fn gauss_curvature_fd<D: ConformalDensity + ?Sized>(metric: &D, z: Complex64, h: f64) -> Result<f64> {
    if !(1e-6..=1e-2).contains(&h) {
        return Err(Error::BadStep(h));
    }
    let half_log = |w: Complex64| -> Result<(f64, f64)> {
        match metric.density(w) {
            Ok(d) if d > 0.0 && d.is_finite() => Ok((0.5 * d.ln(), d)),
            _ => Err(Error::StencilHitsSingularity(z)),
        }
    };
    let (centre, density) = half_log(z)?;
    let mut sum = 0.0;
    for step in [Complex64::new(h, 0.0), Complex64::new(-h, 0.0), Complex64::new(0.0, h), Complex64::new(0.0, -h)] {
        sum += half_log(z + step)?.0;
    }
    let laplacian = (sum - 4.0 * centre) / (h * h);
    Ok(-laplacian / density)
}

/// A rectangular grid of `nx × ny` points including its bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        let grid = GridSpec { x_min, x_max, y_min, y_max, nx, ny };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if ![self.x_min, self.x_max, self.y_min, self.y_max].iter().all(|v| v.is_finite()) {
            return Err(Error::BadGrid("bounds must be finite".into()));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::BadGrid(format!("need nx, ny >= 2, got {} x {}", self.nx, self.ny)));
        }
        if self.x_min >= self.x_max || self.y_min >= self.y_max {
            return Err(Error::BadGrid("need x_min < x_max and y_min < y_max".into()));
        }
        Ok(())
    }

    /// Grid points row by row, `x` varying fastest.
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        let dx = (self.x_max - self.x_min) / (self.nx - 1) as f64;
        let dy = (self.y_max - self.y_min) / (self.ny - 1) as f64;
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| Complex64::new(self.x_min + i as f64 * dx, self.y_min + j as f64 * dy)))
    }
}

/// One sampled grid point; values that cannot be evaluated are NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub z: Complex64,
    pub phi: f64,
    pub density: f64,
    pub curvature: f64,
}

impl MetricParams {
    /// `Φ`, `λ²` and the finite-difference curvature with step `h` at every grid point.
    pub fn sample_grid(&self, grid: &GridSpec, h: f64) -> Vec<GridRow> {
        grid.points()
            .map(|z| GridRow {
                z,
                phi: self.phi_at(z).unwrap_or(f64::NAN),
                density: self.density_at(z).unwrap_or(f64::NAN),
                curvature: self.gauss_curvature_fd(z, h).unwrap_or(f64::NAN),
            })
            .collect()
    }
}

/// Writes `re,im,phi,density,curvature` rows with 17 significant digits.
pub fn write_grid_csv<W: Write>(rows: &[GridRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "re,im,phi,density,curvature")?;
    for r in rows {
        writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}", r.z.re, r.z.im, r.phi, r.density, r.curvature)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{heart_form, BranchChoice, HeartParams, ThreeFootballParams};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn heart(beta: f64, c_log: f64) -> MetricParams {
        HeartParams::new(beta, c_log).unwrap().metric()
    }

    fn special() -> MetricParams {
        ThreeFootballParams::special(c(0.3, 0.2), BranchChoice::Minus, 1.0).unwrap().metric()
    }

    #[test]
    fn phi_values() {
        let m = heart(0.5, 0.0);
        assert!((m.phi_at(c(0.0, 1.0)).unwrap() - 8.0 / 3.0).abs() < 1e-15);
        assert_eq!(phi_pair(0.0), (2.0, 2.0));
        let (phi, rest) = phi_pair(800.0);
        assert_eq!(phi, 4.0);
        assert!((0.0..1e-300).contains(&rest));
        // |F| vanishes at positive-residue poles and blows up at negative ones
        assert!(m.phi_at(c(1.0 + 1e-9, 0.0)).unwrap() < 1e-3);
        let s = special();
        let pb = s.form.poles()[0];
        assert!(pb.residue < 0.0);
        assert!(s.phi_at(pb.position + 1e-9).unwrap() > 4.0 - 1e-3);
    }

    #[test]
    fn density_values() {
        let m = heart(0.5, 0.0);
        assert!((m.density_at(c(0.0, 1.0)).unwrap() - 2.0 / 9.0).abs() < 1e-15);
        assert!((m.density_via_developing(c(0.0, 1.0)).unwrap() - 2.0 / 9.0).abs() < 1e-15);
        assert!(m.density_at(c(0.0, 0.0)).unwrap() < 1e-30);
        assert!(matches!(m.density_via_developing(c(1.0 + 1e-13, 0.0)), Err(Error::EvalAtPole(_))));
    }

    #[test]
    fn developing_modulus_values() {
        let m = heart(0.5, 0.0);
        assert_eq!(m.developing_modulus(ExtendedComplex::finite(1.0, 0.0)), 0.0);
        assert!((m.developing_modulus(ExtendedComplex::finite(0.0, 0.0)) - 1.0).abs() < 1e-15);
        assert_eq!(m.developing_modulus(ExtendedComplex::Infinity), f64::INFINITY);
        let dipole = MetricParams::new(
            CharacterForm::new(vec![crate::forms::PoleSpec::new(c(1.0, 0.0), 0.5), crate::forms::PoleSpec::new(c(-1.0, 0.0), -0.5)]).unwrap(),
            2.0_f64.ln(),
        );
        assert!((dipole.developing_modulus(ExtendedComplex::Infinity) - 2.0_f64.sqrt()).abs() < 1e-15);
        assert_eq!(special().developing_modulus(ExtendedComplex::Infinity), f64::INFINITY);
    }

    #[test]
    fn curvature_is_one() {
        let k = heart(0.6, 0.0).gauss_curvature_fd(c(0.4, 0.7), 1e-4).unwrap();
        assert!((k - 1.0).abs() < 5e-3, "{k}");
        let k = special().gauss_curvature_fd(c(-0.6, 0.9), 1e-4).unwrap();
        assert!((k - 1.0).abs() < 5e-3, "{k}");
        let k = gauss_curvature_fd(&RoundSphere, c(0.3, 0.0), 1e-4).unwrap();
        assert!((k - 1.0).abs() < 1e-6, "{k}");
    }

    #[test]
    fn curvature_stencil_errors() {
        let m = heart(0.6, 0.0);
        assert!(matches!(m.gauss_curvature_fd(c(0.4, 0.7), 1e-1), Err(Error::BadStep(_))));
        assert!(matches!(m.gauss_curvature_fd(c(1.0 - 1e-4, 0.0), 1e-4), Err(Error::StencilHitsSingularity(_))));
        assert!(matches!(m.gauss_curvature_fd(c(0.0, 1e-4), 1e-4), Err(Error::StencilHitsSingularity(_))));
    }

    #[test]
    fn heart_cone_angles() {
        let m = heart(0.6, 0.0);
        let cases = [
            (ExtendedComplex::finite(1.0, 0.0), 2.0 * PI * 0.6),
            (ExtendedComplex::finite(-2.0 / 3.0, 0.0), 2.0 * PI * 0.4),
            (ExtendedComplex::finite(0.0, 0.0), 4.0 * PI),
            (ExtendedComplex::Infinity, 2.0 * PI),
        ];
        for (p, want) in cases {
            let got = m.cone_angle_estimate(p, 1e-3, 512).unwrap();
            assert!((got - want).abs() < 0.01 * want, "{p}: {got} vs {want}");
        }
        assert!(matches!(m.cone_angle_estimate(ExtendedComplex::finite(0.5, 0.5), 1e-3, 512), Err(Error::NotASingularPoint(_))));
    }

    #[test]
    fn cone_angle_near_another_pole_is_rejected() {
        let w = CharacterForm::new(vec![crate::forms::PoleSpec::new(c(0.0, 0.0), 0.5), crate::forms::PoleSpec::new(c(1e-3, 0.0), 0.25)]).unwrap();
        let m = MetricParams::new(w, 0.0);
        assert!(matches!(m.cone_angle_estimate(ExtendedComplex::finite(0.0, 0.0), 1e-3, 512), Err(Error::QuadratureNearPole(_))));
    }

    #[test]
    fn gradient_identity() {
        assert!(heart(0.6, 0.0).phi_gradient_check(c(2.0, 1.0), 1e-5).unwrap() < 1e-6);
        assert!(special().phi_gradient_check(c(-0.7, 0.45), 1e-5).unwrap() < 1e-6);
    }

    #[test]
    fn gradient_identity_does_not_depend_on_c() {
        let z = c(2.0, 1.0);
        let m = heart(0.6, 0.0);
        let shifted = heart(0.6, 1.0);
        for metric in [&m, &shifted] {
            assert!(metric.phi_gradient_check(z, 1e-5).unwrap() < 1e-6);
        }
        // Φ and its gradient from c, the form coefficient from c + 1
        let h = 1e-5;
        let gx = (m.phi_at(z + h).unwrap() - m.phi_at(z - h).unwrap()) / (2.0 * h);
        let gy = (m.phi_at(z + c(0.0, h)).unwrap() - m.phi_at(z - c(0.0, h)).unwrap()) / (2.0 * h);
        let phi = m.phi_at(z).unwrap();
        let f = shifted.form.coefficient_at(z).unwrap();
        let factor = phi * (4.0 - phi) / 4.0;
        let residual = (gx - 2.0 * factor * f.re).hypot(gy + 2.0 * factor * f.im) / gx.hypot(gy).max(1.0);
        assert!(residual < 1e-6);
    }

    #[test]
    fn log_lambda_dz_matches_finite_differences() {
        let m = heart(0.6, 0.3);
        let h = 1e-6;
        for z in [c(0.4, 0.7), c(-1.3, 0.2), c(2.5, -1.5)] {
            let ll = |w: Complex64| 0.25 * m.density_at(w).unwrap().ln();
            let dx = (ll(z + h) - ll(z - h)) / (2.0 * h);
            let dy = (ll(z + c(0.0, h)) - ll(z - c(0.0, h))) / (2.0 * h);
            // ∂_z = (∂_x - i ∂_y)/2 applied to ln λ = ½ ln λ²
            let fd = c(dx, -dy);
            let exact = m.log_lambda_dz(z).unwrap();
            assert!((fd - exact).norm() < 1e-6 * exact.norm().max(1.0));
        }
    }

    #[test]
    fn round_sphere_fixture() {
        assert_eq!(RoundSphere.density(c(0.0, 0.0)).unwrap(), 4.0);
        assert!(RoundSphere.singular_points().is_empty());
        let _ = heart_form(0.5).unwrap();
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn density_formulas_agree_heart(beta in 0.05f64..0.95, c_log in -3.0f64..3.0, re in -4.0f64..4.0, im in -4.0f64..4.0) {
            let m = heart(beta, c_log);
            let z = c(re, im);
            prop_assume!(m.form.distance_to_poles(z) > 1e-3);
            let a = m.density_at(z).unwrap();
            let b = m.density_via_developing(z).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a.max(b).max(1e-300), "{} {}", a, b);
        }

        #[test]
        fn density_formulas_agree_special(p_re in -2.0f64..2.0, p_im in 0.2f64..2.0, amp in 0.2f64..5.0, re in -4.0f64..4.0, im in -4.0f64..4.0) {
            let Ok(params) = ThreeFootballParams::special(c(p_re, p_im), BranchChoice::Minus, amp) else {
                return Ok(());
            };
            let m = params.metric();
            let z = c(re, im);
            prop_assume!(m.form.distance_to_poles(z) > 1e-3);
            let a = m.density_at(z).unwrap();
            let b = m.density_via_developing(z).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a.max(b).max(1e-300));
        }

        #[test]
        fn phi_in_open_interval(beta in 0.05f64..0.95, c_log in -5.0f64..5.0, re in -4.0f64..4.0, im in -4.0f64..4.0) {
            let m = heart(beta, c_log);
            let z = c(re, im);
            prop_assume!(m.form.distance_to_poles(z) > 1e-6);
            let phi = m.phi_at(z).unwrap();
            prop_assert!(phi > 0.0 && phi < 4.0);
        }
    }

    #[test]
    fn grid_csv_rows_and_nan_cells() {
        let m = heart(0.5, 0.0);
        let grid = GridSpec::new(-1.0, 1.0, -1.0, 1.0, 3, 3).unwrap();
        let rows = m.sample_grid(&grid, CURVATURE_STEP);
        assert_eq!(rows.len(), 9);
        // (1, 0) is a pole and (0, 0) a zero of the heart form
        let pole = rows.iter().find(|r| r.z == c(1.0, 0.0)).unwrap();
        assert!(pole.phi.is_nan() && pole.density.is_nan() && pole.curvature.is_nan());
        let zero = rows.iter().find(|r| r.z == c(0.0, 0.0)).unwrap();
        assert!(zero.curvature.is_nan());
        let regular = rows.iter().find(|r| r.z == c(-1.0, 1.0)).unwrap();
        assert!((regular.curvature - 1.0).abs() < 5e-3);
        let mut buf = Vec::new();
        write_grid_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "re,im,phi,density,curvature");
        assert_eq!(lines.len(), 10);
        assert!(lines.iter().skip(1).all(|l| l.split(',').count() == 5));
        let first: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(first[..2], [-1.0, -1.0]);
        assert_eq!(first[3], rows[0].density);
    }

    #[test]
    fn grid_rejects_bad_specs() {
        assert!(GridSpec::new(0.0, 1.0, 0.0, 1.0, 1, 5).is_err());
        assert!(GridSpec::new(1.0, 0.0, 0.0, 1.0, 2, 2).is_err());
        assert!(GridSpec::new(0.0, 1.0, 0.0, f64::NAN, 2, 2).is_err());
    }
}
