//! Abelian differentials of the third kind with real residues on the
//! extended plane.
//!
//! A [`CharacterForm`] stores the finite simple poles of
//! `ω = f(z) dz`, `f(z) = Σ r_k / (z - p_k)`. The residue at infinity is
//! implied by the global residue theorem and never stored.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Chart distance below which a point is treated as sitting on a pole.
pub const POLE_GUARD: f64 = 1e-12;

/// A point of the Riemann sphere `C ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtendedComplex {
    pub fn finite(re: f64, im: f64) -> Self {
        ExtendedComplex::Finite(Complex64::new(re, im))
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match *self {
            ExtendedComplex::Finite(z) => Some(z),
            ExtendedComplex::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedComplex::Infinity)
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(z: Complex64) -> Self {
        ExtendedComplex::Finite(z)
    }
}

impl fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedComplex::Finite(z) => write!(f, "{z}"),
            ExtendedComplex::Infinity => f.write_str("inf"),
        }
    }
}

/// A finite simple pole with its (real, nonzero) residue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleSpec {
    pub position: Complex64,
    pub residue: f64,
}

impl PoleSpec {
    pub fn new(position: Complex64, residue: f64) -> Self {
        PoleSpec { position, residue }
    }
}

/// What a point of the sphere is for a given form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointKind {
    Pole { residue: f64 },
    Zero { order: u32 },
    Regular,
}

impl PointKind {
    /// Exponent `e` with `λ ~ t^e` along a ray into the point.
    pub fn density_exponent(&self) -> f64 {
        match *self {
            PointKind::Pole { residue } => residue.abs() - 1.0,
            PointKind::Zero { order } => order as f64,
            PointKind::Regular => 0.0,
        }
    }

    /// Cone angle predicted by the residue/zero dictionary.
    pub fn cone_angle(&self) -> f64 {
        2.0 * std::f64::consts::PI * (self.density_exponent() + 1.0)
    }
}

/// The character 1-form `ω = Σ r_k/(z - p_k) dz`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawForm", into = "RawForm")]
pub struct CharacterForm {
    poles: Vec<PoleSpec>,
}

/// Differences `z - p_k` for every pole, where `z = base + offset`.
///
/// When `base` coincides with a pole the difference for that pole is the
/// offset itself, which keeps full relative precision for points very close
/// to a pole.
pub(crate) fn pole_offsets(poles: &[PoleSpec], base: Complex64, offset: Complex64) -> Vec<Complex64> {
    poles.iter().map(|p| if p.position == base { offset } else { (base - p.position) + offset }).collect()
}

impl CharacterForm {
    /// Builds a form from its finite poles.
    pub fn new(poles: Vec<PoleSpec>) -> Result<Self> {
        if poles.len() < 2 {
            return Err(Error::TooFewPoles(poles.len()));
        }
        for p in &poles {
            if !(p.position.re.is_finite() && p.position.im.is_finite() && p.residue.is_finite()) {
                return Err(Error::NonFinite);
            }
            if p.residue == 0.0 {
                return Err(Error::ZeroResidue(p.position));
            }
        }
        for (i, p) in poles.iter().enumerate() {
            if poles[..i].iter().any(|q| q.position == p.position) {
                return Err(Error::DuplicatePole(p.position));
            }
        }
        Ok(CharacterForm { poles })
    }

    pub fn poles(&self) -> &[PoleSpec] {
        &self.poles
    }

    pub fn pole_positions(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.poles.iter().map(|p| p.position)
    }

    /// Distance from `z` to the nearest finite pole.
    pub fn distance_to_poles(&self, z: Complex64) -> f64 {
        self.poles.iter().map(|p| (z - p.position).norm()).fold(f64::INFINITY, f64::min)
    }

    /// The pole within `tol` of `z`, if any.
    pub fn pole_near(&self, z: Complex64, tol: f64) -> Option<&PoleSpec> {
        self.poles.iter().find(|q| (q.position - z).norm() <= tol)
    }

    pub(crate) fn guard(&self, z: Complex64) -> Result<()> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        if self.distance_to_poles(z) <= POLE_GUARD {
            return Err(Error::EvalAtPole(z));
        }
        Ok(())
    }

    /// `f(z) = Σ r_k/(z - p_k)`.
    pub fn coefficient_at(&self, z: Complex64) -> Result<Complex64> {
        self.guard(z)?;
        Ok(self.poles.iter().map(|p| p.residue / (z - p.position)).sum())
    }

    /// `f'(z) = -Σ r_k/(z - p_k)^2`.
    pub fn coefficient_derivative_at(&self, z: Complex64) -> Result<Complex64> {
        self.guard(z)?;
        Ok(-self
            .poles
            .iter()
            .map(|p| {
                let d = z - p.position;
                p.residue / (d * d)
            })
            .sum::<Complex64>())
    }

    /// Residue at infinity, `-Σ r_k`, with compensated summation.
    pub fn residue_at_infinity(&self) -> f64 {
        -neumaier_sum(self.poles.iter().map(|p| p.residue))
    }

    /// Sum of `|r_k|`, the natural scale for residue identities.
    pub fn residue_scale(&self) -> f64 {
        self.poles.iter().map(|p| p.residue.abs()).sum()
    }

    /// Real primitive of `ω + ω̄`: `Σ r_k ln|z - p_k|^2`, without any additive constant.
    pub fn potential_at(&self, z: Complex64) -> Result<f64> {
        self.guard(z)?;
        Ok(self.poles.iter().map(|p| 2.0 * p.residue * (z - p.position).norm().ln()).sum())
    }

    /// Coefficients (ascending powers) of the numerator `g` in `f = g/h`,
    /// `h = Π (z - p_k)`.
    pub fn numerator(&self) -> Vec<Complex64> {
        let n = self.poles.len();
        let mut g = vec![Complex64::new(0.0, 0.0); n];
        for (k, pk) in self.poles.iter().enumerate() {
            let mut prod = vec![Complex64::new(pk.residue, 0.0)];
            for (j, pj) in self.poles.iter().enumerate() {
                if j != k {
                    prod = poly_mul_linear(&prod, pj.position);
                }
            }
            for (gi, pi) in g.iter_mut().zip(prod) {
                *gi += pi;
            }
        }
        g
    }

    /// Finite zeros of `ω` with multiplicities, computed in closed form.
    pub fn finite_zeros(&self) -> Result<Vec<(ExtendedComplex, u32)>> {
        let mut g = self.numerator();
        let scale = g.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(Error::DegenerateForm);
        }
        // the top coefficient is Σ r_k; use the compensated value so that
        // exact cancellation registers as zero
        let top = g.len() - 1;
        g[top] = Complex64::new(-self.residue_at_infinity(), 0.0);
        let tol = 1e-14 * scale;
        while g.len() > 1 && g.last().is_some_and(|c| c.norm() <= tol) {
            g.pop();
        }
        if g.len() == 1 && g[0].norm() <= tol {
            return Err(Error::DegenerateForm);
        }
        let degree = g.len() - 1;
        let mut zeros = match degree {
            0 => Vec::new(),
            1 => vec![(-g[0] / g[1], 1)],
            2 => quadratic_roots(g[2], g[1], g[0]),
            d => return Err(Error::UnsupportedDegree(d)),
        };
        zeros.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
        Ok(zeros.into_iter().map(|(z, m)| (ExtendedComplex::Finite(z), m)).collect())
    }

    /// Classifies a point of the sphere. Finite zeros are matched within `tol`.
    pub fn classify(&self, p: ExtendedComplex, tol: f64) -> Result<PointKind> {
        match p {
            ExtendedComplex::Infinity => {
                let r = self.residue_at_infinity();
                if r.abs() > 1e-14 * self.residue_scale() {
                    Ok(PointKind::Pole { residue: r })
                } else {
                    // f ~ c/z^2 at infinity, so ω = -f(1/w) dw/w^2 is regular there
                    Ok(PointKind::Regular)
                }
            }
            ExtendedComplex::Finite(z) => {
                if let Some(pole) = self.pole_near(z, tol) {
                    return Ok(PointKind::Pole { residue: pole.residue });
                }
                for (zero, order) in self.finite_zeros()? {
                    if let ExtendedComplex::Finite(w) = zero {
                        if (w - z).norm() <= tol {
                            return Ok(PointKind::Zero { order });
                        }
                    }
                }
                Ok(PointKind::Regular)
            }
        }
    }
}

fn poly_mul_linear(p: &[Complex64], root: Complex64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); p.len() + 1];
    for (i, &c) in p.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * root;
    }
    out
}

/// Roots of `a z^2 + b z + c` via the cancellation-free formulation.
pub(crate) fn quadratic_roots(a: Complex64, b: Complex64, c: Complex64) -> Vec<(Complex64, u32)> {
    let disc = b * b - 4.0 * a * c;
    let size = (b * b).norm().max((4.0 * a * c).norm());
    if disc.norm() <= 1e-12 * size {
        return vec![(-b / (2.0 * a), 2)];
    }
    let mut s = disc.sqrt();
    if (b.conj() * s).re < 0.0 {
        s = -s;
    }
    let q = -(b + s) / 2.0;
    vec![(q / a, 1), (c / q, 1)]
}

/// Neumaier-compensated summation.
pub(crate) fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[derive(Serialize, Deserialize)]
struct RawPole {
    re: f64,
    im: f64,
    residue: f64,
}

#[derive(Serialize, Deserialize)]
struct RawForm {
    poles: Vec<RawPole>,
}

impl TryFrom<RawForm> for CharacterForm {
    type Error = Error;

    fn try_from(raw: RawForm) -> Result<Self> {
        CharacterForm::new(raw.poles.into_iter().map(|p| PoleSpec::new(Complex64::new(p.re, p.im), p.residue)).collect())
    }
}

impl From<CharacterForm> for RawForm {
    fn from(form: CharacterForm) -> Self {
        RawForm { poles: form.poles.into_iter().map(|p| RawPole { re: p.position.re, im: p.position.im, residue: p.residue }).collect() }
    }
}
