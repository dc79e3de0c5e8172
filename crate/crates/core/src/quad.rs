//! Adaptive Gauss-Kronrod quadrature on finite intervals.
//!
//! A 15-point Kronrod rule with its embedded 7-point Gauss rule supplies the
//! per-panel error estimate; the panel with the largest estimate is bisected
//! until the summed estimate drops below the requested absolute tolerance.

use crate::error::{Error, Result};

/// Positive abscissae of the 15-point Kronrod rule on [-1, 1], descending.
/// Odd indices (1, 3, 5) and the center are the embedded Gauss-7 nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

/// Gauss-7 weights for the nodes at `XGK[1]`, `XGK[3]`, `XGK[5]` and the center.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions {
    /// Absolute tolerance on the summed error estimate.
    pub abs_tol: f64,
    /// Hard cap on the number of panels.
    pub max_intervals: usize,
    /// Uniform panels the window is cut into before refinement starts.
    pub initial_subdivisions: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_intervals: 2048,
            initial_subdivisions: 16,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

/// One 15-point Kronrod panel. Returns (integral, error estimate).
fn kronrod15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);

    let eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteIntegrand { energy: x })
        }
    };

    let f_center = eval(center)?;
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    let mut res_abs = kronrod.abs();
    let mut samples = [0.0_f64; 15];
    samples[14] = f_center;

    for (i, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let f_lo = eval(center - dx)?;
        let f_hi = eval(center + dx)?;
        samples[2 * i] = f_lo;
        samples[2 * i + 1] = f_hi;
        kronrod += WGK[i] * (f_lo + f_hi);
        res_abs += WGK[i] * (f_lo.abs() + f_hi.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f_lo + f_hi);
        }
    }

    // Scaled error estimate in the QUADPACK style: measure the residual
    // against the variation of the integrand over the panel.
    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for i in 0..7 {
        res_asc += WGK[i] * ((samples[2 * i] - mean).abs() + (samples[2 * i + 1] - mean).abs());
    }

    let raw = ((kronrod - gauss) * half).abs();
    res_asc *= half.abs();
    res_abs *= half.abs();
    let mut err = raw;
    if res_asc != 0.0 && raw != 0.0 {
        let scale = (200.0 * raw / res_asc).powf(1.5);
        err = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }

    Ok((kronrod * half, err))
}

/// Integrate `f` over [lo, hi] to the requested absolute tolerance.
pub fn adaptive<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    opts: &AdaptiveOptions,
) -> Result<Quadrature> {
    let n0 = opts.initial_subdivisions.max(1);
    let step = (hi - lo) / n0 as f64;
    let mut panels: Vec<Panel> = Vec::with_capacity(n0 * 2);
    for i in 0..n0 {
        let a = lo + step * i as f64;
        let b = if i + 1 == n0 {
            hi
        } else {
            lo + step * (i + 1) as f64
        };
        let (value, error) = kronrod15(&f, a, b)?;
        panels.push(Panel {
            lo: a,
            hi: b,
            value,
            error,
        });
    }

    loop {
        let total_err: f64 = panels.iter().map(|p| p.error).sum();
        if total_err <= opts.abs_tol {
            break;
        }
        if panels.len() >= opts.max_intervals {
            return Err(Error::QuadratureTolerance {
                requested: opts.abs_tol,
                achieved: total_err,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let (a, b) = (panels[worst].lo, panels[worst].hi);
        let mid = 0.5 * (a + b);
        if !(mid > a && mid < b) {
            // Interval exhausted at f64 resolution.
            return Err(Error::QuadratureTolerance {
                requested: opts.abs_tol,
                achieved: total_err,
            });
        }
        let (v1, e1) = kronrod15(&f, a, mid)?;
        let (v2, e2) = kronrod15(&f, mid, b)?;
        panels[worst] = Panel {
            lo: a,
            hi: mid,
            value: v1,
            error: e1,
        };
        panels.push(Panel {
            lo: mid,
            hi: b,
            value: v2,
            error: e2,
        });
    }

    // Sum in spatial order so the result does not depend on refinement history.
    panels.sort_by(|p, q| p.lo.total_cmp(&q.lo));
    Ok(Quadrature {
        value: panels.iter().map(|p| p.value).sum(),
        error_estimate: panels.iter().map(|p| p.error).sum(),
        panels: panels.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let q = adaptive(|x| x * x, 0.0, 3.0, &AdaptiveOptions::default()).unwrap();
        assert!((q.value - 9.0).abs() < 1e-12, "got {}", q.value);
    }

    #[test]
    fn narrow_peak_converges() {
        // Lorentzian of width 1e-3 centered off the initial panel boundaries.
        let (center, width) = (0.123, 1e-3);
        let q = adaptive(
            |x| width / ((x - center).powi(2) + width * width),
            -50.0,
            50.0,
            &AdaptiveOptions::default(),
        )
        .unwrap();
        let exact = ((50.0 - center) / width).atan() - ((-50.0 - center) / width).atan();
        assert!(
            (q.value - exact).abs() < 1e-8,
            "got {} want {exact}",
            q.value
        );
    }

    #[test]
    fn non_finite_integrand_reports_energy() {
        let err = adaptive(
            |x| if x > 1.0 { f64::NAN } else { 1.0 },
            0.0,
            2.0,
            &AdaptiveOptions::default(),
        )
        .unwrap_err();
        match err {
            Error::NonFiniteIntegrand { energy } => assert!(energy > 1.0),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn tolerance_failure_is_reported() {
        // A discontinuity keeps the estimate above an absurdly tight tolerance.
        let opts = AdaptiveOptions {
            abs_tol: 1e-300,
            max_intervals: 32,
            ..Default::default()
        };
        let err = adaptive(|x| if x > 0.5 { 1.0 } else { 0.0 }, 0.0, 1.0, &opts).unwrap_err();
        assert!(matches!(err, Error::QuadratureTolerance { .. }));
    }
}
