//! Nonlinear Landauer-Buttiker currents.
//!
//! Full scattering-theory integrals at arbitrary (small) biases. The linear
//! Onsager pipeline must reproduce these in the limit of vanishing offsets,
//! which makes this module the independent oracle for that pipeline.

use crate::error::Result;
use crate::fermi::occupation;
use crate::fermi::QuadratureSettings;
use crate::quad::{self, AdaptiveOptions};
use crate::state::{CurrentVector, ReservoirState};
use crate::transmission::{Terminal, Transmission};

/// Particle, energy and heat currents into the conductor from each reservoir:
///
/// ```text
/// J_a^N = Int dE sum_{b != a} T_ab(E) [f_a(E) - f_b(E)]
/// J_a^U = Int dE E sum_{b != a} T_ab(E) [f_a(E) - f_b(E)]
/// J_a^Q = J_a^U - mu_a J_a^N
/// ```
pub fn landauer_currents(
    t: &dyn Transmission,
    reservoirs: &ReservoirState,
    settings: &QuadratureSettings,
) -> Result<CurrentVector> {
    // Window covering every reservoir's thermal tail.
    let mut mu_lo = f64::INFINITY;
    let mut mu_hi = f64::NEG_INFINITY;
    let mut t_max = 0.0_f64;
    for terminal in Terminal::ALL {
        let mu = reservoirs.potential_of(terminal);
        mu_lo = mu_lo.min(mu);
        mu_hi = mu_hi.max(mu);
        t_max = t_max.max(reservoirs.temperature_of(terminal));
    }
    let lo = mu_lo - settings.window_widths * t_max;
    let hi = mu_hi + settings.window_widths * t_max;
    let opts = AdaptiveOptions {
        abs_tol: settings.abs_tol,
        max_intervals: settings.max_intervals,
        initial_subdivisions: settings.initial_subdivisions,
    };

    let mut particle = [0.0; 3];
    let mut energy = [0.0; 3];
    let mut heat = [0.0; 3];
    for a in Terminal::ALL {
        let mu_a = reservoirs.potential_of(a);
        let t_a = reservoirs.temperature_of(a);
        let spectral = |e: f64| -> f64 {
            let f_a = occupation(e, mu_a, t_a);
            Terminal::ALL
                .iter()
                .filter(|&&b| b != a)
                .map(|&b| {
                    let f_b =
                        occupation(e, reservoirs.potential_of(b), reservoirs.temperature_of(b));
                    t.transmission(a, b, e) * (f_a - f_b)
                })
                .sum()
        };
        let n = quad::adaptive(spectral, lo, hi, &opts)?.value;
        let u = quad::adaptive(|e| e * spectral(e), lo, hi, &opts)?.value;
        let i = a.index();
        particle[i] = n;
        energy[i] = u;
        heat[i] = u - mu_a * n;
    }

    Ok(CurrentVector {
        particle,
        heat,
        energy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transmission::UniformTransmission;

    #[test]
    fn equilibrium_carries_no_current() {
        let t = UniformTransmission { value: 0.8 };
        let state = ReservoirState::equilibrium(1.0, 0.0);
        let currents = landauer_currents(&t, &state, &QuadratureSettings::default()).unwrap();
        for i in 0..3 {
            assert!(currents.particle[i].abs() < 1e-12);
            assert!(currents.heat[i].abs() < 1e-12);
            assert!(currents.energy[i].abs() < 1e-12);
        }
    }

    #[test]
    fn currents_are_conserved_under_bias() {
        let t = UniformTransmission { value: 0.8 };
        let state = ReservoirState::equilibrium(1.0, 0.0)
            .with_thermal_bias(Terminal::Left, 0.02)
            .with_potential_bias(Terminal::Left, -0.01)
            .with_thermal_bias(Terminal::Probe, 0.01)
            .with_potential_bias(Terminal::Probe, 0.005);
        let currents = landauer_currents(&t, &state, &QuadratureSettings::default()).unwrap();
        assert!(currents.particle_conservation_residual() < 1e-10);
        assert!(currents.energy_conservation_residual() < 1e-10);
        // Heat differs from energy by the potential-weighted particle flow.
        for a in Terminal::ALL {
            let i = a.index();
            let expected = currents.energy[i] - state.potential_of(a) * currents.particle[i];
            assert!((currents.heat[i] - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn pure_potential_bias_on_uniform_transmission_is_ohmic() {
        // For constant tau, Int (f_a - f_b) dE = mu_a - mu_b exactly.
        let tau = 0.8;
        let dmu = 1e-3;
        let t = UniformTransmission { value: tau };
        let state = ReservoirState::equilibrium(1.0, 0.0).with_potential_bias(Terminal::Left, dmu);
        let currents = landauer_currents(&t, &state, &QuadratureSettings::default()).unwrap();
        let expected = tau * 2.0 * dmu;
        assert!(
            (currents.particle[0] - expected).abs() < 1e-12,
            "J_L^N = {} expected {expected}",
            currents.particle[0]
        );
    }
}
