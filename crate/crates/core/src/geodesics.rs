//! Geodesic lengths between cone points: closed forms for radial geodesics,
//! preimage tracing, shooting for general pairs, and the triangle report of
//! the three-football family.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::ThreeFootballParams;
use crate::forms::{ExtendedComplex, PointKind};
use crate::metric::{ConformalDensity, MetricParams};
use crate::ode::{integrate, Flow, Settings};
use crate::quadrature::{adaptive, singular_ray_integral};

/// Chart distance of the launch points from the cone points they stand in for.
pub const APPROACH_OFFSET: f64 = 1e-4;
/// Default bound on the chart distance between consecutive samples.
pub const STEP_BOUND: f64 = 1e-3;
/// Beyond this modulus sample spacing is bounded in the chart `w = 1/z`.
pub const CHART_SWITCH_RADIUS: f64 = 10.0;

const END_TOLERANCE: f64 = 1e-7;
const INFINITY_RADIUS: f64 = 1.0 / END_TOLERANCE;
const SINGULAR_GUARD: f64 = 1e-6;

/// A sampled curve with its metric length.
///
/// `length` includes `stub_length`, the length of the straight rays joining
/// the first and last samples to the cone points they approximate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeodesicPath {
    #[serde(with = "sample_pairs")]
    pub samples: Vec<Complex64>,
    pub length: f64,
    pub endpoint_defect: f64,
    #[serde(skip)]
    pub stub_length: f64,
    #[serde(skip)]
    pub step_bound: f64,
}

mod sample_pairs {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(samples: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = samples.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

/// Largest chart step allowed at `z` for a nominal bound `step_bound`.
pub fn chart_step_limit(z: Complex64, step_bound: f64) -> f64 {
    let r = z.norm() / CHART_SWITCH_RADIUS;
    step_bound * r.powi(2).max(1.0)
}

/// `(ℓ1, ℓ2, L01)` and the angle `θ` at the vertex over `∞`, opposite `L01`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleReport {
    pub ell1: f64,
    pub ell2: f64,
    #[serde(rename = "L01")]
    pub l01: f64,
    pub theta: f64,
}

/// `2 |arctan|F(b)| - arctan|F(a)||`, the length of a geodesic that develops
/// onto a meridian.
pub fn radial_length(metric: &MetricParams, a: ExtendedComplex, b: ExtendedComplex) -> f64 {
    let fa = metric.developing_modulus(a).atan();
    let fb = metric.developing_modulus(b).atan();
    2.0 * (fb - fa).abs()
}

/// `(ℓ1, ℓ2) = (π - 2 arctan|F(1)|, π - 2 arctan|F(0)|)`.
pub fn three_football_lengths(metric: &MetricParams) -> (f64, f64) {
    let one = metric.developing_modulus(ExtendedComplex::finite(1.0, 0.0));
    let zero = metric.developing_modulus(ExtendedComplex::finite(0.0, 0.0));
    (PI - 2.0 * one.atan(), PI - 2.0 * zero.atan())
}

/// Metric length of the straight ray from the cone point `p` to `approach`.
pub fn stub_length(metric: &MetricParams, p: ExtendedComplex, approach: Complex64) -> Result<f64> {
    let exponent = metric.form.classify(p, 1e-9)?.density_exponent();
    match p {
        ExtendedComplex::Finite(p) => {
            let p = metric.form.pole_near(p, 1e-9).map_or(p, |q| q.position);
            let offset = approach - p;
            let len = offset.norm();
            let dir = offset / len;
            singular_ray_integral(len, exponent, |t| Ok(metric.lambda_local(p, dir * t)))
        }
        ExtendedComplex::Infinity => {
            let w = 1.0 / approach;
            let len = w.norm();
            let dir = w / len;
            singular_ray_integral(len, exponent, |t| Ok(metric.lambda_at_infinity_chart(dir * t)))
        }
    }
}

/// Metric length of the polyline through `samples`.
pub fn path_length<D: ConformalDensity + ?Sized>(metric: &D, samples: &[Complex64]) -> Result<f64> {
    let mut total = 0.0;
    for pair in samples.windows(2) {
        let (z0, dz) = (pair[0], pair[1] - pair[0]);
        let len = dz.norm();
        if len == 0.0 {
            continue;
        }
        total += len * adaptive(0.0, 1.0, 1e-11, |s| Ok(metric.density(z0 + dz * s)?.sqrt()))?;
    }
    Ok(total)
}

fn nearest_distance(points: &[Complex64], z: Complex64) -> f64 {
    points.iter().map(|p| (z - p).norm()).fold(f64::INFINITY, f64::min)
}

fn wrap_angle(a: f64) -> f64 {
    let r = (a + PI).rem_euclid(2.0 * PI) - PI;
    if r == -PI {
        PI
    } else {
        r
    }
}

struct Trace {
    samples: Vec<Complex64>,
    reached: bool,
    defect: f64,
}

/// Traces the preimage of a meridian from a simple zero of `ω` to a point where
/// `|F|` is `0` or `∞`, as the integral curve of `dz/dτ = ±1/f` (`τ = ln|F|`).
///
/// Either endpoint may be the zero; the samples always run from `a` to `b`.
/// `n` bounds the step in `τ` to `1/n` of the total change of `ln|F|`.
pub fn trace_radial_preimage(metric: &MetricParams, a: ExtendedComplex, b: ExtendedComplex, n: usize) -> Result<GeodesicPath> {
    if n < 100 {
        return Err(Error::TraceDiverged(format!("at least 100 steps are required, got {n}")));
    }
    let simple_zero = |p: ExtendedComplex| -> Result<Option<Complex64>> {
        Ok(match (p, metric.form.classify(p, 1e-9)?) {
            (ExtendedComplex::Finite(z), PointKind::Zero { order: 1 }) => Some(z),
            _ => None,
        })
    };
    let (zero, target, swapped) = match (simple_zero(a)?, simple_zero(b)?) {
        (Some(z), _) => (z, b, false),
        (None, Some(z)) => (z, a, true),
        (None, None) => return Err(Error::TraceDiverged("neither endpoint is a simple zero of the form".into())),
    };
    let target = match target {
        ExtendedComplex::Finite(t) => ExtendedComplex::Finite(metric.form.pole_near(t, 1e-9).map_or(t, |q| q.position)),
        ExtendedComplex::Infinity => target,
    };
    let target_modulus = metric.developing_modulus(target);
    let sigma = if target_modulus == 0.0 {
        -1.0
    } else if target_modulus.is_infinite() {
        1.0
    } else {
        return Err(Error::TraceDiverged(format!("{target} does not develop to 0 or infinity")));
    };

    // near the zero ln F ≈ const + κ (z - zero)², and ln|F| moves in the
    // direction σ along rays u with σ κ u² > 0
    let kappa = metric.form.coefficient_derivative_at(zero)? * 0.5;
    let kappa = if kappa.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { kappa };
    let sigma_arg = if sigma > 0.0 { 0.0 } else { PI };
    let u0 = Complex64::from_polar(1.0, 0.5 * (sigma_arg - kappa.arg()));
    let mut candidates = [u0, -u0];
    if let ExtendedComplex::Finite(t) = target {
        let toward = |u: &Complex64| -(u.conj() * (t - zero)).re;
        candidates.sort_by(|u, v| toward(u).total_cmp(&toward(v)));
    }

    let mut best_defect = f64::INFINITY;
    for u in candidates {
        let trace = match run_trace(metric, zero, u, target, sigma, n) {
            Ok(t) => t,
            Err(_) => continue,
        };
        if !trace.reached {
            best_defect = best_defect.min(trace.defect);
            continue;
        }
        let first = *trace.samples.first().expect("trace has samples");
        let last = *trace.samples.last().expect("trace has samples");
        let stubs = stub_length(metric, zero.into(), first)? + stub_length(metric, target, last)?;
        let mut samples = trace.samples;
        let length = path_length(metric, &samples)? + stubs;
        if swapped {
            samples.reverse();
        }
        return Ok(GeodesicPath { samples, length, endpoint_defect: trace.defect, stub_length: stubs, step_bound: STEP_BOUND });
    }
    Err(Error::EndpointNotReached(best_defect))
}

fn run_trace(metric: &MetricParams, zero: Complex64, u: Complex64, target: ExtendedComplex, sigma: f64, n: usize) -> Result<Trace> {
    let singular = metric.singular_points();
    let start = zero + APPROACH_OFFSET * u;
    let log_modulus = |base: Complex64, offset: Complex64| 0.5 * metric.local(base, offset).x;
    let tau_end = match target {
        ExtendedComplex::Finite(t) => log_modulus(t, (start - t) / (start - t).norm() * END_TOLERANCE),
        ExtendedComplex::Infinity => log_modulus(start / start.norm() * INFINITY_RADIUS, Complex64::new(0.0, 0.0)),
    };
    let tau_span = (tau_end - log_modulus(start, Complex64::new(0.0, 0.0))).abs();
    let dtau = tau_span / n as f64;

    let mut samples = vec![start];
    let mut reached = false;
    let settings = Settings { rtol: 1e-12, atol: 1e-15, h_init: dtau.min(1e-6), max_steps: 2_000_000 };
    integrate(
        &settings,
        0.0,
        [start.re, start.im],
        4.0 * tau_span + 50.0,
        |_, y| {
            let f = metric.form.coefficient_at(Complex64::new(y[0], y[1]))?;
            let v = sigma / f;
            Ok([v.re, v.im])
        },
        |_, y, dy| {
            let z = Complex64::new(y[0], y[1]);
            let speed = dy[0].hypot(dy[1]);
            // half the bound leaves room for the speed to change within a step
            let chart = (0.5 * chart_step_limit(z, STEP_BOUND)).min(0.25 * nearest_distance(&singular, z));
            dtau.min(chart / speed)
        },
        |_, y, _| {
            let z = Complex64::new(y[0], y[1]);
            samples.push(z);
            match target {
                ExtendedComplex::Finite(t) if (z - t).norm() <= END_TOLERANCE => {
                    reached = true;
                    return Ok(Flow::Stop);
                }
                ExtendedComplex::Infinity if z.norm() >= INFINITY_RADIUS => {
                    reached = true;
                    return Ok(Flow::Stop);
                }
                _ => {}
            }
            let escaped = z.norm() >= INFINITY_RADIUS;
            let captured = singular.iter().any(|s| (z - s).norm() <= END_TOLERANCE && (s - zero).norm() > 0.5 * APPROACH_OFFSET);
            Ok(if escaped || captured { Flow::Stop } else { Flow::Continue })
        },
    )?;
    let last = *samples.last().expect("trace has samples");
    let defect = match target {
        ExtendedComplex::Finite(t) => (last - t).norm(),
        ExtendedComplex::Infinity => 1.0 / last.norm(),
    };
    Ok(Trace { samples, reached, defect })
}

/// Parameters of the shooting solver in [`geodesic_between_with`].
#[derive(Debug, Clone, Copy)]
pub struct ShootingOptions {
    /// Number of equispaced launch directions scanned for sign changes.
    pub directions: usize,
    /// Longest metric length integrated per shot.
    pub max_length: f64,
    /// Largest closest-approach distance accepted for a converged shot.
    pub tolerance: f64,
    pub step_bound: f64,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        ShootingOptions { directions: 64, max_length: PI, tolerance: 1e-6, step_bound: STEP_BOUND }
    }
}

#[derive(Debug, Clone)]
struct Shot {
    miss: f64,
    sigma: f64,
    end: Complex64,
    velocity: Complex64,
    samples: Vec<Complex64>,
}

fn hermite(z0: Complex64, v0: Complex64, z1: Complex64, v1: Complex64, h: f64, s: f64) -> (Complex64, Complex64) {
    let (s2, s3) = (s * s, s * s * s);
    let z = (2.0 * s3 - 3.0 * s2 + 1.0) * z0 + (s3 - 2.0 * s2 + s) * h * v0 + (3.0 * s2 - 2.0 * s3) * z1 + (s3 - s2) * h * v1;
    let v = (6.0 * s2 - 6.0 * s) * (z0 - z1) / h + (3.0 * s2 - 4.0 * s + 1.0) * v0 + (3.0 * s2 - 2.0 * s) * v1;
    (z, v)
}

/// Integrates the unit-speed geodesic leaving `z0` at chart angle `psi` and
/// records its closest approach to `target`. Steps respect the chart step
/// bound only when `capped`; uncapped shots are for searching.
fn shoot<D: ConformalDensity + ?Sized>(
    metric: &D,
    singular: &[Complex64],
    z0: Complex64,
    target: Complex64,
    psi: f64,
    opts: &ShootingOptions,
    capped: bool,
) -> Result<Option<Shot>> {
    let lambda0 = metric.density(z0)?.sqrt();
    if !(lambda0 > 0.0) {
        return Err(Error::StepNearPole(nearest_distance(singular, z0)));
    }
    let v0 = Complex64::from_polar(1.0 / lambda0, psi);
    let mut prev = (0.0, z0, v0);
    let mut best: Option<(f64, Complex64, Complex64, usize)> = None;
    let mut samples = vec![z0];
    let settings = Settings { rtol: 1e-11, atol: 1e-14, h_init: 1e-5, max_steps: 1_000_000 };
    let result = integrate(
        &settings,
        0.0,
        [z0.re, z0.im, v0.re, v0.im],
        opts.max_length,
        |_, y| {
            let z = Complex64::new(y[0], y[1]);
            let v = Complex64::new(y[2], y[3]);
            let acc = -2.0 * metric.log_lambda_dz(z)? * v * v;
            Ok([v.re, v.im, acc.re, acc.im])
        },
        |_, y, _| {
            let z = Complex64::new(y[0], y[1]);
            let speed = y[2].hypot(y[3]);
            let chart = if capped { 0.5 * chart_step_limit(z, opts.step_bound) } else { f64::INFINITY };
            chart.min(0.25 * nearest_distance(singular, z)) / speed
        },
        |t, y, _| {
            let z = Complex64::new(y[0], y[1]);
            let v = Complex64::new(y[2], y[3]);
            let near = nearest_distance(singular, z);
            if near < SINGULAR_GUARD {
                return Err(Error::StepNearPole(near));
            }
            let (t_prev, z_prev, v_prev) = prev;
            let g = |z: Complex64, v: Complex64| ((z - target).conj() * v).re;
            if g(z_prev, v_prev) < 0.0 && g(z, v) >= 0.0 {
                let h = t - t_prev;
                let (mut lo, mut hi) = (0.0, 1.0);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    let (zm, vm) = hermite(z_prev, v_prev, z, v, h, mid);
                    if g(zm, vm) < 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let s = 0.5 * (lo + hi);
                let (zc, vc) = hermite(z_prev, v_prev, z, v, h, s);
                let better = best.is_none_or(|(_, zb, _, _)| (zc - target).norm() < (zb - target).norm());
                if better {
                    best = Some((t_prev + s * h, zc, vc, samples.len()));
                }
            }
            samples.push(z);
            prev = (t, z, v);
            Ok(if z.norm() > 1e6 { Flow::Stop } else { Flow::Continue })
        },
    );
    if let Err(e) = result {
        if best.is_none() {
            return Err(e);
        }
    }
    Ok(best.map(|(sigma, end, velocity, count)| {
        let dir = velocity / velocity.norm();
        let miss = (dir.conj() * (target - end)).im;
        samples.truncate(count);
        samples.push(end);
        Shot { miss, sigma, end, velocity, samples }
    }))
}

/// A converged shot with its launch angle.
struct ShootingSolution {
    path: GeodesicPath,
    launch_angle: f64,
    arrival_velocity: Complex64,
}

fn solve_shooting<D: ConformalDensity + ?Sized>(metric: &D, z0: Complex64, z1: Complex64, opts: &ShootingOptions) -> Result<ShootingSolution> {
    let n = opts.directions.max(4);
    let base = (z1 - z0).arg();
    let angles: Vec<f64> = (0..=n).map(|j| base + 2.0 * PI * j as f64 / n as f64).collect();
    solve_on_angles(metric, z0, z1, opts, &angles)?.ok_or_else(|| Error::ShootingFailed(format!("no launch angle from {z0} reaches {z1}")))
}

/// Refines every sign change of the miss distance between consecutive
/// `angles` and returns the shortest converged shot.
fn solve_on_angles<D: ConformalDensity + ?Sized>(
    metric: &D,
    z0: Complex64,
    z1: Complex64,
    opts: &ShootingOptions,
    angles: &[f64],
) -> Result<Option<ShootingSolution>> {
    let singular = metric.singular_points();
    for z in [z0, z1] {
        let near = nearest_distance(&singular, z);
        if near < SINGULAR_GUARD {
            return Err(Error::StepNearPole(near));
        }
    }
    let fire = |psi: f64| shoot(metric, &singular, z0, z1, psi, opts, false).ok().flatten();
    let hits = |shot: &Shot| (shot.end - z1).norm() <= opts.tolerance;
    let scan: Vec<Option<Shot>> = angles.iter().map(|&psi| fire(psi)).collect();

    let mut roots: Vec<(f64, Shot)> = Vec::new();
    for j in 0..angles.len() - 1 {
        let (Some(sa), Some(sb)) = (&scan[j], &scan[j + 1]) else { continue };
        // a scan angle can land on the solution with a miss of either sign
        if sa.miss == 0.0 || (sa.end - z1).norm() <= 1e-3 * opts.tolerance {
            roots.push((angles[j], sa.clone()));
            continue;
        }
        if sa.miss.signum() == sb.miss.signum() {
            continue;
        }
        let (mut a, mut fa) = (angles[j], sa.miss);
        let (mut b, mut fb) = (angles[j + 1], sb.miss);
        let mut shot_b = sb.clone();
        for _ in 0..80 {
            if fb.abs() < 1e-3 * opts.tolerance || (b - a).abs() < 1e-15 {
                break;
            }
            let mut c = b - fb * (b - a) / (fb - fa);
            if !(c > a.min(b) && c < a.max(b)) {
                c = 0.5 * (a + b);
            }
            let Some(shot_c) = fire(c) else { break };
            let fc = shot_c.miss;
            if fc.signum() != fb.signum() {
                a = b;
                fa = fb;
            } else {
                fa *= 0.5;
            }
            b = c;
            fb = fc;
            shot_b = shot_c;
        }
        if hits(&shot_b) {
            roots.push((b, shot_b));
        }
    }
    roots.sort_by(|x, y| x.1.sigma.total_cmp(&y.1.sigma));
    let recorded = roots.into_iter().find_map(|(psi, _)| {
        let shot = shoot(metric, &singular, z0, z1, psi, opts, true).ok().flatten()?;
        hits(&shot).then_some((psi, shot))
    });
    Ok(recorded.map(|(launch_angle, shot)| ShootingSolution {
        path: GeodesicPath {
            endpoint_defect: (shot.end - z1).norm(),
            length: shot.sigma,
            samples: shot.samples,
            stub_length: 0.0,
            step_bound: opts.step_bound,
        },
        launch_angle,
        arrival_velocity: shot.velocity,
    }))
}

/// Shortest geodesic from `z0` to `z1` found by shooting with default options.
pub fn geodesic_between<D: ConformalDensity + ?Sized>(metric: &D, z0: Complex64, z1: Complex64) -> Result<GeodesicPath> {
    geodesic_between_with(metric, z0, z1, &ShootingOptions::default())
}

/// Scans `opts.directions` launch angles for sign changes of the signed miss
/// distance at closest approach, refines each bracket with the Illinois
/// method, and returns the shortest converged geodesic.
pub fn geodesic_between_with<D: ConformalDensity + ?Sized>(metric: &D, z0: Complex64, z1: Complex64, opts: &ShootingOptions) -> Result<GeodesicPath> {
    Ok(solve_shooting(metric, z0, z1, opts)?.path)
}

/// Geodesic between two finite cone points.
///
/// The shooting endpoints sit at [`APPROACH_OFFSET`] from `a` and `b` on rays
/// that are re-aimed until they continue the geodesic; the ray lengths are
/// added as stubs.
pub fn cone_geodesic(metric: &MetricParams, a: Complex64, b: Complex64) -> Result<GeodesicPath> {
    let ea = metric.form.classify(a.into(), 1e-9)?.density_exponent();
    let eb = metric.form.classify(b.into(), 1e-9)?.density_exponent();
    let mut phi_a = (b - a).arg();
    let mut phi_b = (a - b).arg();
    let opts = ShootingOptions::default();
    let mut previous: Option<(ShootingSolution, f64)> = None;
    let mut guess = None;
    for _ in 0..20 {
        let za = a + Complex64::from_polar(APPROACH_OFFSET, phi_a);
        let zb = b + Complex64::from_polar(APPROACH_OFFSET, phi_b);
        let sol = match guess {
            Some(guess) => {
                let window: Vec<f64> = (-4..=4).map(|k| guess + 0.02 * k as f64).collect();
                match solve_on_angles(metric, za, zb, &opts, &window)? {
                    Some(sol) => sol,
                    None => solve_shooting(metric, za, zb, &opts)?,
                }
            }
            None => solve_shooting(metric, za, zb, &opts)?,
        };
        let total = sol.path.length + stub_length(metric, a.into(), za)? + stub_length(metric, b.into(), zb)?;
        // in the cone coordinate (z - p)^(e+1) geodesics from p are straight,
        // so the launch angle responds to the ray angle with slope -e
        let da = wrap_angle(sol.launch_angle - phi_a);
        let db = wrap_angle((-sol.arrival_velocity).arg() - phi_b);
        let settled = previous.as_ref().is_some_and(|p| (p.1 - total).abs() <= 1e-12 * total.max(1e-3));
        previous = Some((sol, total));
        if settled || (da.abs() < 1e-7 && db.abs() < 1e-7) {
            break;
        }
        phi_a += da / (ea + 1.0);
        phi_b += db / (eb + 1.0);
        guess = Some(previous.as_ref().map_or(0.0, |p| p.0.launch_angle) - ea * da / (ea + 1.0));
    }
    let (sol, total) = previous.expect("at least one iteration");
    let mut path = sol.path;
    path.stub_length = total - path.length;
    path.length = total;
    Ok(path)
}

/// Angle opposite the side `a_opposite` of a spherical triangle with sides
/// `a_opposite, b, c`.
pub fn spherical_angle(a_opposite: f64, b: f64, c: f64) -> Result<f64> {
    let a = a_opposite;
    for side in [a, b, c] {
        if !(side > 0.0 && side < PI) {
            return Err(Error::DegenerateTriangle(format!("side {side} outside (0, pi)")));
        }
    }
    let tol = 1e-9;
    if a > b + c + tol || b > a + c + tol || c > a + b + tol || a + b + c > 2.0 * PI + tol {
        return Err(Error::DegenerateTriangle(format!("sides {a}, {b}, {c} violate the triangle inequality")));
    }
    let denom = b.sin() * c.sin();
    if denom < 1e-12 {
        return Err(Error::DegenerateTriangle("adjacent side too close to 0 or pi".into()));
    }
    let x = (a.cos() - b.cos() * c.cos()) / denom;
    Ok(x.clamp(-1.0, 1.0).acos())
}

/// `ℓ1 = L(1,∞)`, `ℓ2 = L(0,∞)`, `L01 = L(0,1)` and the angle at `∞`.
pub fn decomposition_report(params: &ThreeFootballParams) -> Result<TriangleReport> {
    triangle_report(&params.metric())
}

/// [`decomposition_report`] for any metric whose form has simple zeros at `0` and `1`.
pub fn triangle_report(metric: &MetricParams) -> Result<TriangleReport> {
    let (ell1, ell2) = three_football_lengths(metric);
    let l01 = cone_geodesic(metric, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))?.length;
    let theta = spherical_angle(l01, ell1, ell2)?;
    Ok(TriangleReport { ell1, ell2, l01, theta })
}
