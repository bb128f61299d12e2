//! Adaptive Dormand–Prince 5(4) integration with caller-controlled step caps
//! and stopping.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights minus embedded fourth-order weights
const E: [f64; 7] = [71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0];

pub(crate) enum Flow {
    Continue,
    Stop,
}

/// Error tolerance and limits of one integration.
pub(crate) struct Settings {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: f64,
    pub max_steps: usize,
}

/// Integrates `y' = rhs(t, y)` from `t0` towards `t_end`.
///
/// `h_cap(t, y, y')` bounds each step; `on_step(t, y, y')` sees every accepted
/// step and may stop the integration. Returns the final `(t, y)`.
pub(crate) fn integrate<const N: usize>(
    settings: &Settings,
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    mut rhs: impl FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
    mut h_cap: impl FnMut(f64, &[f64; N], &[f64; N]) -> f64,
    mut on_step: impl FnMut(f64, &[f64; N], &[f64; N]) -> Result<Flow>,
) -> Result<(f64, [f64; N])> {
    let mut t = t0;
    let mut y = y0;
    let mut k0 = rhs(t, &y)?;
    let mut h = settings.h_init;
    for _ in 0..settings.max_steps {
        if t >= t_end {
            return Ok((t, y));
        }
        h = h.min(h_cap(t, &y, &k0));
        let last = h >= t_end - t;
        if last {
            h = t_end - t;
        }
        if !(h > 1e-14 * t.abs().max(1.0)) {
            return Err(Error::TraceDiverged(format!("step size underflow at t = {t}")));
        }
        let mut k = [[0.0; N]; 7];
        k[0] = k0;
        let mut stage_failed = false;
        for s in 1..7 {
            let mut ys = y;
            for (i, yi) in ys.iter_mut().enumerate() {
                for j in 0..s {
                    *yi += h * A[s][j] * k[j][i];
                }
            }
            match rhs(t + C[s] * h, &ys) {
                Ok(v) => k[s] = v,
                Err(_) => {
                    stage_failed = true;
                    break;
                }
            }
        }
        if stage_failed {
            h *= 0.25;
            continue;
        }
        let mut y_new = y;
        let mut err = 0.0;
        for i in 0..N {
            let mut incr = 0.0;
            let mut e = 0.0;
            for s in 0..6 {
                incr += A[6][s] * k[s][i];
            }
            for s in 0..7 {
                e += E[s] * k[s][i];
            }
            y_new[i] = y[i] + h * incr;
            let scale = settings.atol + settings.rtol * y[i].abs().max(y_new[i].abs());
            err += (h * e / scale).powi(2);
        }
        let err = (err / N as f64).sqrt();
        if !err.is_finite() {
            h *= 0.25;
            continue;
        }
        if err <= 1.0 {
            t = if last { t_end } else { t + h };
            y = y_new;
            k0 = k[6];
            if let Flow::Stop = on_step(t, &y, &k0)? {
                return Ok((t, y));
            }
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
    }
    Err(Error::TraceDiverged(format!("step limit reached at t = {t}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings() -> Settings {
        Settings { rtol: 1e-12, atol: 1e-14, h_init: 1e-3, max_steps: 100_000 }
    }

    #[test]
    fn harmonic_oscillator() {
        let (t, y) =
            integrate(&settings(), 0.0, [1.0, 0.0], 10.0, |_, y| Ok([y[1], -y[0]]), |_, _, _| f64::INFINITY, |_, _, _| Ok(Flow::Continue)).unwrap();
        assert_eq!(t, 10.0);
        assert!((y[0] - 10f64.cos()).abs() < 1e-10);
        assert!((y[1] + 10f64.sin()).abs() < 1e-10);
    }

    #[test]
    fn stop_and_cap_are_respected() {
        let mut last = 0.0;
        let mut max_step: f64 = 0.0;
        let (t, _) = integrate(
            &settings(),
            0.0,
            [0.0],
            10.0,
            |_, _| Ok([1.0]),
            |_, _, _| 0.01,
            |t, _, _| {
                max_step = max_step.max(t - last);
                last = t;
                Ok(if t > 1.0 { Flow::Stop } else { Flow::Continue })
            },
        )
        .unwrap();
        assert!(t > 1.0 && t < 1.02);
        assert!(max_step <= 0.01 + 1e-15);
    }
}
