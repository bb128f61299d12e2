//! The heart-shape family `S²_{2,β,γ}` (β + γ = 1) and the three-football
//! family `S²_{2,2,β,α+β,α+γ,γ}`, together with the solver for the pole
//! positions of the latter.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::forms::{CharacterForm, PoleSpec};
use crate::metric::MetricParams;

/// Two of {0, 1, P_α, P_β, P_γ} closer than this are considered colliding.
pub const COLLISION_DISTANCE: f64 = 1e-9;
/// Largest relative residual of g(0), g(1) accepted for a three-football triple.
pub const CONSTRAINT_TOLERANCE: f64 = 1e-10;

/// Parameters of the heart shape: `β ∈ (0, 1)`, `γ = 1 - β`, and the log-scale constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawHeart")]
pub struct HeartParams {
    pub beta: f64,
    pub c_log: f64,
}

#[derive(Deserialize)]
struct RawHeart {
    beta: f64,
    c_log: f64,
}

impl TryFrom<RawHeart> for HeartParams {
    type Error = Error;

    fn try_from(raw: RawHeart) -> Result<Self> {
        HeartParams::new(raw.beta, raw.c_log)
    }
}

impl HeartParams {
    pub fn new(beta: f64, c_log: f64) -> Result<Self> {
        check_heart_beta(beta)?;
        if !c_log.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(HeartParams { beta, c_log })
    }

    pub fn gamma(&self) -> f64 {
        1.0 - self.beta
    }

    /// Position of the γ-pole, `-γ/β`.
    pub fn gamma_pole(&self) -> Complex64 {
        Complex64::new(-self.gamma() / self.beta, 0.0)
    }

    pub fn form(&self) -> CharacterForm {
        heart_form(self.beta).expect("validated beta")
    }

    pub fn metric(&self) -> MetricParams {
        MetricParams::new(self.form(), self.c_log)
    }
}

fn check_heart_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::BadAngle(format!("heart beta must lie in (0, 1), got {beta}")));
    }
    Ok(())
}

/// `ω = z / ((z - 1)(z + γ/β)) dz` with poles `1` (residue β) and `-γ/β` (residue γ).
pub fn heart_form(beta: f64) -> Result<CharacterForm> {
    check_heart_beta(beta)?;
    let gamma = 1.0 - beta;
    CharacterForm::new(vec![PoleSpec::new(Complex64::new(1.0, 0.0), beta), PoleSpec::new(Complex64::new(-gamma / beta, 0.0), gamma)])
}

/// `|w₀| = |F(0)| = e^{c/2} (γ/β)^γ`, the same on every branch of `F`.
pub fn heart_apex_image(params: &HeartParams) -> f64 {
    let gamma = params.gamma();
    (0.5 * params.c_log + gamma * (gamma / params.beta).ln()).exp()
}

/// Angle data `(α, β, γ)` of the three-football family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleTriple {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

fn near_integer(x: f64) -> bool {
    (x - x.round()).abs() < 1e-12
}

impl AngleTriple {
    /// Validates positivity and that `β, γ, α+β, α+γ` are not integers.
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let t = Self::positive(alpha, beta, gamma)?;
        for (name, v) in [("beta", beta), ("gamma", gamma), ("alpha+beta", alpha + beta), ("alpha+gamma", alpha + gamma)] {
            if near_integer(v) {
                return Err(Error::BadAngle(format!("{name} = {v} must not be an integer")));
            }
        }
        Ok(t)
    }

    /// `(α, (1+√2)α/2, α)`, the angle relation of the worked special case.
    ///
    /// The integrality conditions are not imposed: the case is used with
    /// `α = γ = 1`, where `γ` and `α+γ` are integers. The pole at `P_γ` is
    /// then a smooth point (residue 1) and `∞` a cone point of angle `4π`.
    pub fn special(alpha: f64) -> Result<Self> {
        Self::positive(alpha, 0.5 * (1.0 + SQRT_2) * alpha, alpha)
    }

    pub fn is_special(&self) -> bool {
        self.gamma == self.alpha && (self.beta - 0.5 * (1.0 + SQRT_2) * self.alpha).abs() <= 1e-14 * self.alpha
    }

    fn positive(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::BadAngle(format!("{name} must be a positive real, got {v}")));
            }
        }
        Ok(AngleTriple { alpha, beta, gamma })
    }

    /// Residues `(-β, α+β, γ)` at `(P_β, P_α, P_γ)`.
    pub fn residues(&self) -> (f64, f64, f64) {
        (-self.beta, self.alpha + self.beta, self.gamma)
    }
}

/// Which root of the `P_γ` quadratic to take.
///
/// The quadratic is normalised to be monic, `t² + b t + c`, and the roots are
/// `(-b ± √(b² - 4c)) / 2` with the principal square root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchChoice {
    Plus,
    Minus,
}

impl std::str::FromStr for BranchChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" => Ok(BranchChoice::Plus),
            "minus" => Ok(BranchChoice::Minus),
            other => Err(Error::BadAngle(format!("unknown branch '{other}' (expected plus or minus)"))),
        }
    }
}

/// `g(z) = -β(z-P_α)(z-P_γ) + (α+β)(z-P_β)(z-P_γ) + γ(z-P_β)(z-P_α)` split into its
/// three summands.
fn g_terms(angles: &AngleTriple, z: Complex64, pa: Complex64, pb: Complex64, pg: Complex64) -> [Complex64; 3] {
    let AngleTriple { alpha, beta, gamma } = *angles;
    [-beta * (z - pa) * (z - pg), (alpha + beta) * (z - pb) * (z - pg), gamma * (z - pb) * (z - pa)]
}

fn relative_residual(terms: [Complex64; 3]) -> f64 {
    let scale = terms.iter().map(|t| t.norm()).fold(1.0, f64::max);
    (terms[0] + terms[1] + terms[2]).norm() / scale
}

/// Relative residuals `(|g(0)|, |g(1)|)`, each divided by `max(1, |summand|)`.
pub fn constraint_residual(angles: &AngleTriple, p_alpha: Complex64, p_beta: Complex64, p_gamma: Complex64) -> (f64, f64) {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    (relative_residual(g_terms(angles, zero, p_alpha, p_beta, p_gamma)), relative_residual(g_terms(angles, one, p_alpha, p_beta, p_gamma)))
}

/// `(β t - γ P_β) · g(1)` with `P_α` eliminated through `g(0) = 0`, as a polynomial in
/// `t = P_γ`; evaluated without division.
fn eliminated_g1(angles: &AngleTriple, p_beta: Complex64, t: Complex64) -> Complex64 {
    let AngleTriple { alpha, beta, gamma } = *angles;
    let one = Complex64::new(1.0, 0.0);
    let d = beta * t - gamma * p_beta;
    let n = (alpha + beta) * p_beta * t;
    // (1 - P_α) d = d - n
    -beta * (d - n) * (one - t) + (alpha + beta) * (one - p_beta) * (one - t) * d + gamma * (one - p_beta) * (d - n)
}

/// Coefficients `[a, b, c]` of the quadratic `a P_γ² + b P_γ + c = 0` on the constraint
/// variety, obtained by sampling the eliminated `g(1)` at three points.
pub fn pgamma_quadratic(angles: &AngleTriple, p_beta: Complex64) -> [Complex64; 3] {
    let s = p_beta.norm().max(1.0);
    let q0 = eliminated_g1(angles, p_beta, Complex64::new(0.0, 0.0));
    let qp = eliminated_g1(angles, p_beta, Complex64::new(s, 0.0));
    let qm = eliminated_g1(angles, p_beta, Complex64::new(-s, 0.0));
    let a = (qp + qm - 2.0 * q0) / (2.0 * s * s);
    let b = (qp - qm) / (2.0 * s);
    [a, b, q0]
}

/// `P_α = (α+β) P_β P_γ / (β P_γ - γ P_β)` from `g(0) = 0`.
pub fn p_alpha_from(angles: &AngleTriple, p_beta: Complex64, p_gamma: Complex64) -> Result<Complex64> {
    let AngleTriple { alpha, beta, gamma } = *angles;
    let den = beta * p_gamma - gamma * p_beta;
    if den.norm() <= 1e-14 * (beta * p_gamma.norm() + gamma * p_beta.norm()) {
        return Err(Error::DivisionByZero);
    }
    Ok((alpha + beta) * p_beta * p_gamma / den)
}

fn check_collisions(points: &[Complex64]) -> Result<()> {
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[..i] {
            if (p - q).norm() < COLLISION_DISTANCE {
                return Err(Error::CollidingPoles(q, p));
            }
        }
    }
    Ok(())
}

/// Solves `g(0) = g(1) = 0` for `(P_α, P_γ)` given `P_β`.
pub fn solve_pole_positions(angles: &AngleTriple, p_beta: Complex64, branch: BranchChoice) -> Result<(Complex64, Complex64)> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    check_collisions(&[zero, one, p_beta])?;

    let [a, b, c] = pgamma_quadratic(angles, p_beta);
    if a.norm() <= 1e-14 * b.norm().max(c.norm()) || a.norm() == 0.0 {
        return Err(Error::DegenerateQuadratic);
    }
    let (b, c) = (b / a, c / a);
    let disc = b * b - 4.0 * c;
    if disc.norm() <= 1e-12 * (b * b).norm().max(4.0 * c.norm()) {
        return Err(Error::DoubleRoot);
    }
    let s = disc.sqrt();
    // the root of larger modulus comes from the quadratic formula, the other
    // from Vieta, so neither suffers cancellation
    let (big, sign_of_big) = if (b.conj() * s).re >= 0.0 { (-(b + s) / 2.0, BranchChoice::Minus) } else { ((s - b) / 2.0, BranchChoice::Plus) };
    let small = c / big;
    let p_gamma = if branch == sign_of_big { big } else { small };

    let p_alpha = p_alpha_from(angles, p_beta, p_gamma)?;
    check_collisions(&[zero, one, p_beta, p_alpha, p_gamma])?;
    Ok((p_alpha, p_gamma))
}

/// Closed-form pole positions `((1-2√2) P_β, (√2-1) P_β)` of the special angle relation
/// `α = γ`, `β = (1+√2)α/2`, on the minus branch.
///
/// These satisfy `g(0) = 0` for every `P_β` but `g(1) = 0` only at `P_β = 1/2`;
/// elsewhere the triple has its second zero at `2 P_β` instead of `1`.
pub fn special_case_poles(p_beta: Complex64) -> Result<(Complex64, Complex64)> {
    for excluded in [0.0, 1.0, std::f64::consts::FRAC_1_SQRT_2] {
        if (p_beta - excluded).norm() <= 1e-12 {
            return Err(Error::ExcludedPoint(p_beta));
        }
    }
    Ok(((1.0 - 2.0 * SQRT_2) * p_beta, (SQRT_2 - 1.0) * p_beta))
}

/// `ω = (-β/(z-P_β) + (α+β)/(z-P_α) + γ/(z-P_γ)) dz`, after checking the zero constraints.
pub fn three_football_form(angles: &AngleTriple, p_alpha: Complex64, p_beta: Complex64, p_gamma: Complex64) -> Result<CharacterForm> {
    check_collisions(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), p_beta, p_alpha, p_gamma])?;
    let (r0, r1) = constraint_residual(angles, p_alpha, p_beta, p_gamma);
    if !(r0 <= CONSTRAINT_TOLERANCE && r1 <= CONSTRAINT_TOLERANCE) {
        return Err(Error::ConstraintViolated(r0, r1));
    }
    unchecked_three_football_form(angles, p_alpha, p_beta, p_gamma)
}

/// Same pole/residue layout as [`three_football_form`] without the constraint check.
pub fn unchecked_three_football_form(angles: &AngleTriple, p_alpha: Complex64, p_beta: Complex64, p_gamma: Complex64) -> Result<CharacterForm> {
    let (rb, ra, rg) = angles.residues();
    CharacterForm::new(vec![PoleSpec::new(p_beta, rb), PoleSpec::new(p_alpha, ra), PoleSpec::new(p_gamma, rg)])
}

/// Solved pole positions of a three-football configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleTriple {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
}

/// A point of the three-football family: angle data, a point `P_β` of the constraint
/// curve with a branch of the `P_γ` quadratic, and the scale `c > 0` of the developing map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawThreeFootball", into = "RawThreeFootball")]
pub struct ThreeFootballParams {
    pub angles: AngleTriple,
    pub p_beta: Complex64,
    pub branch: BranchChoice,
    pub c_amp: f64,
    poles: PoleTriple,
}

impl ThreeFootballParams {
    pub fn new(angles: AngleTriple, p_beta: Complex64, branch: BranchChoice, c_amp: f64) -> Result<Self> {
        if !(c_amp.is_finite() && c_amp > 0.0) {
            return Err(Error::BadAngle(format!("c_amp must be a positive real, got {c_amp}")));
        }
        if !(p_beta.re.is_finite() && p_beta.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let (p_alpha, p_gamma) = solve_pole_positions(&angles, p_beta, branch)?;
        three_football_form(&angles, p_alpha, p_beta, p_gamma)?;
        Ok(ThreeFootballParams { angles, p_beta, branch, c_amp, poles: PoleTriple { alpha: p_alpha, beta: p_beta, gamma: p_gamma } })
    }

    /// The special angle relation with `α = γ = 1`.
    pub fn special(p_beta: Complex64, branch: BranchChoice, c_amp: f64) -> Result<Self> {
        Self::new(AngleTriple::special(1.0)?, p_beta, branch, c_amp)
    }

    pub fn poles(&self) -> PoleTriple {
        self.poles
    }

    pub fn form(&self) -> CharacterForm {
        unchecked_three_football_form(&self.angles, self.poles.alpha, self.poles.beta, self.poles.gamma).expect("validated on construction")
    }

    /// `c_log = 2 ln c_amp`, so that `|F|² = e^{potential + c_log}`.
    pub fn c_log(&self) -> f64 {
        2.0 * self.c_amp.ln()
    }

    pub fn metric(&self) -> MetricParams {
        MetricParams::new(self.form(), self.c_log())
    }

    pub fn with_c_amp(&self, c_amp: f64) -> Result<Self> {
        Self::new(self.angles, self.p_beta, self.branch, c_amp)
    }
}

#[derive(Serialize, Deserialize)]
struct RawThreeFootball {
    alpha: f64,
    beta: f64,
    gamma: f64,
    p_beta_re: f64,
    p_beta_im: f64,
    branch: BranchChoice,
    c_amp: f64,
}

impl TryFrom<RawThreeFootball> for ThreeFootballParams {
    type Error = Error;

    fn try_from(raw: RawThreeFootball) -> Result<Self> {
        let angles = match AngleTriple::new(raw.alpha, raw.beta, raw.gamma) {
            Ok(a) => a,
            Err(e) => {
                let special = AngleTriple::special(raw.alpha)?;
                if (special.beta - raw.beta).abs() <= 1e-12 * special.beta && special.gamma == raw.gamma {
                    special
                } else {
                    return Err(e);
                }
            }
        };
        ThreeFootballParams::new(angles, Complex64::new(raw.p_beta_re, raw.p_beta_im), raw.branch, raw.c_amp)
    }
}

impl From<ThreeFootballParams> for RawThreeFootball {
    fn from(p: ThreeFootballParams) -> Self {
        RawThreeFootball {
            alpha: p.angles.alpha,
            beta: p.angles.beta,
            gamma: p.angles.gamma,
            p_beta_re: p.p_beta.re,
            p_beta_im: p.p_beta.im,
            branch: p.branch,
            c_amp: p.c_amp,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::ExtendedComplex;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn heart_pole_layout() {
        let w = heart_form(0.5).unwrap();
        assert_eq!(w.poles()[0], PoleSpec::new(c(1.0, 0.0), 0.5));
        assert_eq!(w.poles()[1], PoleSpec::new(c(-1.0, 0.0), 0.5));
        let w = heart_form(2.0 / 3.0).unwrap();
        assert!((w.poles()[1].position - c(-0.5, 0.0)).norm() < 1e-15);
        assert!((w.poles()[1].residue - 1.0 / 3.0).abs() < 1e-15);
        assert!(matches!(heart_form(1.5), Err(Error::BadAngle(_))));
        assert!(matches!(heart_form(0.0), Err(Error::BadAngle(_))));
    }

    #[test]
    fn heart_zero_and_residues() {
        for beta in [0.1, 0.3, 0.5, 0.6, 0.93] {
            let w = heart_form(beta).unwrap();
            assert!(w.coefficient_at(c(0.0, 0.0)).unwrap().norm() < 1e-15);
            assert!((w.residue_at_infinity() + 1.0).abs() < 1e-15);
            let zeros = w.finite_zeros().unwrap();
            assert_eq!(zeros.len(), 1);
            assert_eq!(zeros[0].1, 1);
            assert!(zeros[0].0.as_finite().unwrap().norm() < 1e-15);
            // product form z / ((z-1)(z+γ/β))
            let g = (1.0 - beta) / beta;
            for z in [c(0.3, 0.4), c(-2.0, 1.5), c(7.0, -3.0)] {
                let prod = z / ((z - 1.0) * (z + g));
                let part = w.coefficient_at(z).unwrap();
                assert!((prod - part).norm() <= 1e-12 * prod.norm());
            }
        }
    }

    #[test]
    fn apex_image_values() {
        assert!((heart_apex_image(&HeartParams::new(0.5, 0.0).unwrap()) - 1.0).abs() < 1e-15);
        let w = heart_apex_image(&HeartParams::new(0.6, 0.0).unwrap());
        assert!((w - (2.0_f64 / 3.0).powf(0.4)).abs() < 1e-15);
        assert!((w - (0.4 * (2.0_f64 / 3.0).ln()).exp()).abs() < 1e-15);
        let w = heart_apex_image(&HeartParams::new(0.5, 2.0 * 3.0_f64.ln()).unwrap());
        assert!((w - 3.0).abs() < 1e-14);
    }

    #[test]
    fn angle_triple_validation() {
        assert!(AngleTriple::new(0.3, 0.4, 0.45).is_ok());
        assert!(AngleTriple::new(0.6, 0.4, 0.45).is_err()); // α+β = 1
        assert!(AngleTriple::new(1.0, 1.2, 1.0).is_err()); // γ = 1
        assert!(AngleTriple::new(-0.1, 0.4, 0.45).is_err());
        let s = AngleTriple::special(1.0).unwrap();
        assert!(s.is_special());
        assert!((s.beta - (1.0 + SQRT_2) / 2.0).abs() < 1e-16);
    }

    #[test]
    fn quadratic_matches_displayed_coefficients() {
        // -αβ t² + (αβ + γβ - 2γβ P_β) t + (-αγ P_β + αγ P_β² + γβ P_β² - γ² P_β + γ² P_β²)
        let angles = AngleTriple::new(0.37, 0.81, 0.29).unwrap();
        let AngleTriple { alpha: a, beta: b, gamma: g } = angles;
        for pb in [c(0.3, 0.2), c(-1.7, 0.4), c(2.5, -3.0)] {
            let [qa, qb, qc] = pgamma_quadratic(&angles, pb);
            let da = c(-a * b, 0.0);
            let db = a * b + g * b - 2.0 * g * b * pb;
            let dc = -a * g * pb + a * g * pb * pb + g * b * pb * pb - g * g * pb + g * g * pb * pb;
            assert!((qa - da).norm() < 1e-13);
            assert!((qb - db).norm() < 1e-13 * db.norm().max(1.0));
            assert!((qc - dc).norm() < 1e-13 * dc.norm().max(1.0));
        }
    }

    #[test]
    fn solver_satisfies_constraints_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut triples = 0;
        while triples < 5 {
            let Ok(angles) = AngleTriple::new(rng.gen_range(0.1..2.5), rng.gen_range(0.1..2.5), rng.gen_range(0.1..2.5)) else {
                continue;
            };
            triples += 1;
            for _ in 0..20 {
                let pb = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
                let mut roots = Vec::new();
                for branch in [BranchChoice::Plus, BranchChoice::Minus] {
                    let (pa, pg) = solve_pole_positions(&angles, pb, branch).unwrap();
                    let (r0, r1) = constraint_residual(&angles, pa, pb, pg);
                    assert!(r0 <= 1e-10 && r1 <= 1e-10, "{r0:e} {r1:e}");
                    let w = three_football_form(&angles, pa, pb, pg).unwrap();
                    let zeros = w.finite_zeros().unwrap();
                    assert_eq!(zeros.len(), 2);
                    let z0 = zeros.iter().map(|(z, _)| z.as_finite().unwrap().norm()).fold(f64::INFINITY, f64::min);
                    let z1 = zeros.iter().map(|(z, _)| (z.as_finite().unwrap() - 1.0).norm()).fold(f64::INFINITY, f64::min);
                    assert!(z0 < 1e-9 && z1 < 1e-9);
                    assert!((w.residue_at_infinity() + angles.alpha + angles.gamma).abs() < 1e-14);
                    roots.push(pg);
                }
                // Vieta against the sampled quadratic
                let [a, b, cc] = pgamma_quadratic(&angles, pb);
                let sum = roots[0] + roots[1];
                let prod = roots[0] * roots[1];
                assert!((sum + b / a).norm() <= 1e-10 * (b / a).norm().max(1.0));
                assert!((prod - cc / a).norm() <= 1e-10 * (cc / a).norm().max(1.0));
                assert!((roots[0] - roots[1]).norm() > 1e-9);
            }
        }
    }

    #[test]
    fn special_closed_form_is_on_the_variety_only_at_one_half() {
        let angles = AngleTriple::special(1.0).unwrap();
        let (pa, pg) = special_case_poles(c(0.5, 0.0)).unwrap();
        assert!((pa - (1.0 - 2.0 * SQRT_2) / 2.0).norm() < 1e-15);
        assert!((pg - (SQRT_2 - 1.0) / 2.0).norm() < 1e-15);
        let (r0, r1) = constraint_residual(&angles, pa, c(0.5, 0.0), pg);
        assert!(r0 < 1e-14 && r1 < 1e-14);
        let (sa, sg) = solve_pole_positions(&angles, c(0.5, 0.0), BranchChoice::Minus).unwrap();
        assert!((sa - pa).norm() < 1e-12 && (sg - pg).norm() < 1e-12);

        // elsewhere g(0) = 0 still holds but g(1) = 2 - 4 P_β (for α = 1)
        let pb = c(0.3, 0.2);
        let (pa, pg) = special_case_poles(pb).unwrap();
        let (r0, _) = constraint_residual(&angles, pa, pb, pg);
        assert!(r0 < 1e-14);
        let g1: Complex64 = g_terms(&angles, c(1.0, 0.0), pa, pb, pg).iter().sum();
        assert!((g1 - (2.0 - 4.0 * pb)).norm() < 1e-13);
        // and the triple's zeros are at 0 and 2 P_β
        let w = unchecked_three_football_form(&angles, pa, pb, pg).unwrap();
        let zeros: Vec<Complex64> = w.finite_zeros().unwrap().iter().map(|(z, _)| z.as_finite().unwrap()).collect();
        assert!(zeros.iter().any(|z| z.norm() < 1e-14));
        assert!(zeros.iter().any(|z| (z - 2.0 * pb).norm() < 1e-13));
        assert!(matches!(three_football_form(&angles, pa, pb, pg), Err(Error::ConstraintViolated(..))));
    }

    #[test]
    fn special_case_exclusions() {
        for p in [0.0, 1.0, std::f64::consts::FRAC_1_SQRT_2] {
            assert!(matches!(special_case_poles(c(p, 0.0)), Err(Error::ExcludedPoint(_))));
        }
    }

    #[test]
    fn special_case_form_has_expected_residue_at_infinity() {
        let params = ThreeFootballParams::special(c(0.3, 0.2), BranchChoice::Minus, 1.0).unwrap();
        let w = params.form();
        assert!((w.residue_at_infinity() + 2.0).abs() < 1e-15);
        let zeros = w.finite_zeros().unwrap();
        assert!((zeros[0].0.as_finite().unwrap()).norm() < 1e-9);
        assert!((zeros[1].0.as_finite().unwrap() - 1.0).norm() < 1e-9);
        assert_eq!(w.classify(ExtendedComplex::finite(1.0, 0.0), 1e-9).unwrap(), crate::forms::PointKind::Zero { order: 1 });
    }

    #[test]
    fn mislabelled_poles_break_the_constraint() {
        let angles = AngleTriple::new(0.37, 0.81, 0.29).unwrap();
        let pb = c(0.4, -0.9);
        let (pa, pg) = solve_pole_positions(&angles, pb, BranchChoice::Plus).unwrap();
        assert!(three_football_form(&angles, pa, pb, pg).is_ok());
        assert!(matches!(three_football_form(&angles, pg, pb, pa), Err(Error::ConstraintViolated(..))));
    }

    #[test]
    fn residual_sensitivity() {
        let angles = AngleTriple::special(1.0).unwrap();
        let pb = c(0.3, 0.2);
        let (pa, pg) = solve_pole_positions(&angles, pb, BranchChoice::Minus).unwrap();
        let (r0, r1) = constraint_residual(&angles, pa, pb, pg);
        assert!(r0 < 1e-14 && r1 < 1e-14);
        let (r0, r1) = constraint_residual(&angles, pa, pb, pg + 1e-3);
        let worst = r0.max(r1);
        assert!(worst > 1e-4 && worst < 1e-2, "{worst:e}");
        let (r0, r1) = constraint_residual(&angles, c(0.9, 1.3), c(-0.4, 0.2), c(2.0, -1.0));
        assert!(r0.max(r1) > 0.05);
    }

    #[test]
    fn collisions_are_rejected() {
        let angles = AngleTriple::new(0.37, 0.81, 0.29).unwrap();
        assert!(matches!(solve_pole_positions(&angles, c(1.0, 0.0), BranchChoice::Plus), Err(Error::CollidingPoles(..))));
        assert!(matches!(solve_pole_positions(&angles, c(0.0, 0.0), BranchChoice::Plus), Err(Error::CollidingPoles(..))));
    }

    #[test]
    fn params_json_round_trip() {
        let h = HeartParams::new(0.6, -0.25).unwrap();
        let text = serde_json::to_string(&h).unwrap();
        assert_eq!(text, r#"{"beta":0.6,"c_log":-0.25}"#);
        assert_eq!(serde_json::from_str::<HeartParams>(&text).unwrap(), h);
        assert!(serde_json::from_str::<HeartParams>(r#"{"beta":1.5,"c_log":0}"#).is_err());

        let t = ThreeFootballParams::special(c(0.3, 0.2), BranchChoice::Minus, 1.0).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["alpha", "beta", "gamma", "p_beta_re", "p_beta_im", "branch", "c_amp"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["branch"], "minus");
        assert_eq!(serde_json::from_str::<ThreeFootballParams>(&text).unwrap(), t);
    }
}
