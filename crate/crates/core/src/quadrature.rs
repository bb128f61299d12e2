//! Gauss–Legendre rules and the singular ray integrals used for stub lengths
//! and cone-angle radii.

use std::sync::OnceLock;

use crate::error::Result;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub(crate) fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn gl7() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(7))
}

fn gl20() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(20))
}

fn fixed_rule(rule: &(Vec<f64>, Vec<f64>), a: f64, b: f64, f: &mut impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let mut sum = 0.0;
    for (x, w) in rule.0.iter().zip(&rule.1) {
        sum += w * f(mid + half * x)?;
    }
    Ok(sum * half)
}

/// Adaptive 7-point Gauss–Legendre on `[a, b]`, bisecting until a panel agrees
/// with the sum of its halves to relative tolerance `tol`, at most 12 levels deep.
pub(crate) fn adaptive(a: f64, b: f64, tol: f64, mut f: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    let whole = fixed_rule(gl7(), a, b, &mut f)?;
    adaptive_rec(a, b, whole, tol, 0, &mut f)
}

fn adaptive_rec(a: f64, b: f64, whole: f64, tol: f64, depth: u32, f: &mut impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    let m = 0.5 * (a + b);
    let left = fixed_rule(gl7(), a, m, f)?;
    let right = fixed_rule(gl7(), m, b, f)?;
    let halves = left + right;
    if (halves - whole).abs() <= tol * halves.abs().max(1e-300) || depth >= 12 {
        return Ok(halves);
    }
    Ok(adaptive_rec(a, m, left, tol, depth + 1, f)? + adaptive_rec(m, b, right, tol, depth + 1, f)?)
}

/// `∫₀^len g(t) dt` for `g(t) ~ K t^exponent` as `t → 0⁺` (`exponent > -1`).
///
/// Substituting `t = len·v^q` with `q = 1/(exponent+1)` turns the integrand
/// into a function of `v` whose remaining non-smoothness sits at `v = 0`; it is
/// integrated by 20-point Gauss–Legendre on panels graded geometrically towards 0.
pub(crate) fn singular_ray_integral(len: f64, exponent: f64, mut g: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    if len == 0.0 {
        return Ok(0.0);
    }
    let q = 1.0 / (exponent + 1.0);
    let mut total = 0.0;
    let mut b: f64 = 1.0;
    for k in 0..8 {
        let a = if k == 7 { 0.0 } else { 0.25 * b };
        total += fixed_rule(gl20(), a, b, &mut |v: f64| {
            let t = len * v.powf(q);
            Ok(g(t)? * len * q * v.powf(q - 1.0))
        })?;
        b = a;
    }
    Ok(total)
}
