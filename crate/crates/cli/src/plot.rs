//! Hand-written SVG: singular points, dashed level sets of `|F|`, and traced geodesics.

use std::fmt::Write as _;

use conemetric::geodesics::{cone_geodesic, trace_radial_preimage};
use conemetric::{ExtendedComplex, GeodesicPath, GridSpec, MetricParams};
use num_complex::Complex64;

use crate::config::{FamilyConfig, RunConfig};

pub const SIZE: f64 = 800.0;
/// Geodesic samples beyond this modulus are not drawn.
pub const CLIP_RADIUS: f64 = 10.0;

const RASTER: usize = 161;
const TRACE_STEPS: usize = 400;
const FINITE_COLOR: &str = "#d62728";
const INFINITE_COLOR: &str = "#2ca02c";

struct Viewport {
    grid: GridSpec,
}

impl Viewport {
    fn map(&self, z: Complex64) -> (f64, f64) {
        let g = &self.grid;
        let x = (z.re - g.x_min) / (g.x_max - g.x_min) * SIZE;
        let y = (g.y_max - z.im) / (g.y_max - g.y_min) * SIZE;
        (x, y)
    }
}

struct Trace {
    from: &'static str,
    to: String,
    infinite: bool,
    path: GeodesicPath,
}

/// The SVG document and the warnings raised while building it.
pub struct Plot {
    pub svg: String,
    pub warnings: Vec<String>,
}

fn marks(family: &FamilyConfig) -> Vec<(String, Complex64)> {
    let origin = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match family {
        FamilyConfig::Heart(h) => vec![("0".into(), origin), ("1".into(), one), ("-γ/β".into(), h.gamma_pole())],
        FamilyConfig::ThreeFb(t) => {
            let p = t.poles();
            vec![("0".into(), origin), ("1".into(), one), ("P_α".into(), p.alpha), ("P_β".into(), p.beta), ("P_γ".into(), p.gamma)]
        }
    }
}

fn radial(metric: &MetricParams, from: &'static str, a: ExtendedComplex, to: &str, b: ExtendedComplex) -> Result<Trace, String> {
    trace_radial_preimage(metric, a, b, TRACE_STEPS)
        .map(|path| Trace { from, to: to.to_string(), infinite: b.is_infinite(), path })
        .map_err(|e| format!("trace {from} -> {to} failed: {e}"))
}

fn traces(family: &FamilyConfig, metric: &MetricParams, warnings: &mut Vec<String>) -> Vec<Trace> {
    let origin = ExtendedComplex::finite(0.0, 0.0);
    let one = ExtendedComplex::finite(1.0, 0.0);
    let inf = ExtendedComplex::Infinity;
    let mut attempts: Vec<Result<Trace, String>> = Vec::new();
    match family {
        FamilyConfig::Heart(h) => {
            attempts.push(radial(metric, "0", origin, "1", one));
            attempts.push(radial(metric, "0", origin, "-γ/β", ExtendedComplex::Finite(h.gamma_pole())));
            attempts.push(radial(metric, "0", origin, "∞", inf));
        }
        FamilyConfig::ThreeFb(t) => {
            attempts.push(
                cone_geodesic(metric, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
                    .map(|path| Trace { from: "0", to: "1".into(), infinite: false, path })
                    .map_err(|e| format!("geodesic 0 -> 1 failed: {e}")),
            );
            let p = t.poles();
            for (label, pole) in [("P_α", p.alpha), ("P_β", p.beta), ("P_γ", p.gamma)] {
                let target = ExtendedComplex::Finite(pole);
                attempts.push(radial(metric, "0", origin, label, target).or_else(|_| radial(metric, "1", one, label, target)));
            }
            attempts.push(radial(metric, "0", origin, "∞", inf));
            attempts.push(radial(metric, "1", one, "∞", inf));
        }
    }
    attempts
        .into_iter()
        .filter_map(|a| match a {
            Ok(t) => Some(t),
            Err(e) => {
                warnings.push(e);
                None
            }
        })
        .collect()
}

/// Marching-squares segments of the level `level` of `values` sampled on the raster.
fn contour_segments(values: &[f64], level: f64, corner: impl Fn(usize, usize) -> Complex64) -> Vec<(Complex64, Complex64)> {
    let at = |i: usize, j: usize| values[j * RASTER + i];
    let mut segments = Vec::new();
    for j in 0..RASTER - 1 {
        for i in 0..RASTER - 1 {
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let v: Vec<f64> = corners.iter().map(|&(a, b)| at(a, b)).collect();
            if v.iter().any(|x| !x.is_finite()) {
                continue;
            }
            let mut crossings = Vec::new();
            for k in 0..4 {
                let (a, b) = (v[k] - level, v[(k + 1) % 4] - level);
                if (a < 0.0) != (b < 0.0) {
                    let s = a / (a - b);
                    let (p, q) = (corners[k], corners[(k + 1) % 4]);
                    crossings.push(corner(p.0, p.1) + (corner(q.0, q.1) - corner(p.0, p.1)) * s);
                }
            }
            match crossings.len() {
                2 => segments.push((crossings[0], crossings[1])),
                4 => {
                    segments.push((crossings[0], crossings[1]));
                    segments.push((crossings[2], crossings[3]));
                }
                _ => {}
            }
        }
    }
    segments
}

fn level_sets(metric: &MetricParams, grid: &GridSpec, view: &Viewport, svg: &mut String) {
    let corner = |i: usize, j: usize| {
        Complex64::new(
            grid.x_min + (grid.x_max - grid.x_min) * i as f64 / (RASTER - 1) as f64,
            grid.y_min + (grid.y_max - grid.y_min) * j as f64 / (RASTER - 1) as f64,
        )
    };
    let values: Vec<f64> = (0..RASTER)
        .flat_map(|j| (0..RASTER).map(move |i| (i, j)))
        .map(|(i, j)| metric.developing_modulus(ExtendedComplex::Finite(corner(i, j))).ln())
        .collect();
    for k in -6..=6 {
        let level = 0.5 * k as f64;
        let segments = contour_segments(&values, level, corner);
        if segments.is_empty() {
            continue;
        }
        let mut d = String::new();
        for (a, b) in segments {
            let (a, b) = (view.map(a), view.map(b));
            let _ = write!(d, "M{:.2} {:.2}L{:.2} {:.2}", a.0, a.1, b.0, b.1);
        }
        let _ = writeln!(
            svg,
            r##"<path class="level" data-log-modulus="{level}" d="{d}" fill="none" stroke="#7f7f7f" stroke-width="0.8" stroke-dasharray="4 3"/>"##
        );
    }
}

/// Splits `samples` into runs that stay within [`CLIP_RADIUS`].
fn clipped_runs(samples: &[Complex64]) -> Vec<&[Complex64]> {
    samples.split(|z| z.norm() > CLIP_RADIUS).filter(|run| run.len() >= 2).collect()
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace("--", "- -")
}

/// Builds the SVG for `config`.
pub fn render(config: &RunConfig) -> Plot {
    let metric = config.family.metric();
    let view = Viewport { grid: config.grid };
    let g = &config.grid;
    let mut warnings = Vec::new();
    let traced = traces(&config.family, &metric, &mut warnings);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800" data-x-min="{}" data-x-max="{}" data-y-min="{}" data-y-max="{}">"#,
        g.x_min, g.x_max, g.y_min, g.y_max
    );
    let _ = writeln!(svg, r#"<rect width="800" height="800" fill="white"/>"#);
    for w in &warnings {
        let _ = writeln!(svg, "<!-- warning: {} -->", escape(w));
    }
    level_sets(&metric, g, &view, &mut svg);
    for trace in &traced {
        let color = if trace.infinite { INFINITE_COLOR } else { FINITE_COLOR };
        for run in clipped_runs(&trace.path.samples) {
            let mut points = String::new();
            for (k, z) in run.iter().enumerate() {
                let (x, y) = view.map(*z);
                let sep = if k == 0 { "" } else { " " };
                let _ = write!(points, "{sep}{x:.4},{y:.4}");
            }
            let _ = writeln!(
                svg,
                r#"<polyline class="geodesic" data-from="{}" data-to="{}" data-step-bound="{}" points="{points}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                trace.from, trace.to, trace.path.step_bound
            );
        }
    }
    for (label, z) in marks(&config.family) {
        let (x, y) = view.map(z);
        let _ = writeln!(
            svg,
            r#"<g class="mark" data-label="{label}"><circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/><text x="{:.2}" y="{:.2}" font-size="14">{label}</text></g>"#,
            x + 6.0,
            y - 6.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<g class="mark" data-label="∞"><circle cx="770" cy="30" r="4" fill="none" stroke="black"/><text x="745" y="55" font-size="14">∞ →</text></g>"#
    );
    svg.push_str("</svg>\n");
    Plot { svg, warnings }
}
