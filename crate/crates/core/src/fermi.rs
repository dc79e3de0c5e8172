//! Fermi-Dirac statistics and thermal moments of transmission functions.
//!
//! Reduced units throughout: h = 1, e = 1, k_B = 1.

use crate::error::Result;
use crate::quad::{self, AdaptiveOptions};

/// Fermi-Dirac occupation f(E) at chemical potential `mu` and temperature `t`.
pub fn occupation(energy: f64, mu: f64, t: f64) -> f64 {
    let u = (energy - mu) / t;
    if u >= 0.0 {
        let e = (-u).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + u.exp())
    }
}

/// The positive thermal kernel -df/dE. Even in (E - mu), peaked at `mu`
/// with height 1/(4T), and stable for arbitrarily large |E - mu|.
pub fn fermi_derivative(energy: f64, mu: f64, t: f64) -> f64 {
    let u = ((energy - mu) / t).abs();
    let e = (-u).exp();
    e / (t * (1.0 + e) * (1.0 + e))
}

/// Window and refinement controls for all thermal quadratures.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSettings {
    /// Half-width of the integration window in units of k_B T.
    /// The kernel decays like exp(-|E-mu|/T), so 40 thermal widths push the
    /// truncation error far below the refinement tolerance.
    pub window_widths: f64,
    /// Absolute tolerance on the adaptive error estimate.
    pub abs_tol: f64,
    /// Panel budget for the refinement loop.
    pub max_intervals: usize,
    /// Uniform pre-subdivision of the window.
    pub initial_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            window_widths: 40.0,
            abs_tol: 1e-10,
            max_intervals: 2048,
            initial_subdivisions: 16,
        }
    }
}

impl QuadratureSettings {
    fn adaptive_options(&self) -> AdaptiveOptions {
        AdaptiveOptions {
            abs_tol: self.abs_tol,
            max_intervals: self.max_intervals,
            initial_subdivisions: self.initial_subdivisions,
        }
    }
}

/// Thermal moment of a transmission function:
///
/// ```text
/// M_n = Int (-df/dE) (E - mu)^n  tau(E) dE
/// ```
///
/// over the window mu +/- window_widths * k_B T. For constant tau = 1 the first
/// three moments are 1, 0 and (pi T)^2 / 3.
pub fn fermi_derivative_moment<F>(
    order: u32,
    t: f64,
    mu: f64,
    transmission: F,
    settings: &QuadratureSettings,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let w = settings.window_widths * t;
    let q = quad::adaptive(
        |e| fermi_derivative(e, mu, t) * (e - mu).powi(order as i32) * transmission(e),
        mu - w,
        mu + w,
        &settings.adaptive_options(),
    )?;
    Ok(q.value)
}
