//! Reservoir biases, generalized forces and current vectors.
//!
//! Reduced units: h = 1, e = 1, k_B = 1, so voltages and chemical potentials
//! coincide and temperatures carry energy units.

use crate::transmission::Terminal;

/// Ratio of bias to reference temperature above which a configuration leaves
/// the trustworthy linear-response window.
pub const DEFAULT_BIAS_WARNING_THRESHOLD: f64 = 0.1;

/// Temperatures and chemical potentials of the three reservoirs, stored as
/// offsets from the right (reference) terminal. The reference offsets are
/// identically zero and cannot be set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReservoirState {
    /// Reference temperature T (terminal R).
    pub temperature: f64,
    /// Reference chemical potential mu (terminal R).
    pub chemical_potential: f64,
    /// [Delta T_L, Delta T_P].
    pub delta_temperature: [f64; 2],
    /// [Delta mu_L, Delta mu_P].
    pub delta_potential: [f64; 2],
}

impl ReservoirState {
    pub fn equilibrium(temperature: f64, chemical_potential: f64) -> Self {
        Self {
            temperature,
            chemical_potential,
            delta_temperature: [0.0; 2],
            delta_potential: [0.0; 2],
        }
    }

    /// Set the temperature offset of L or P. Panics for the reference terminal.
    pub fn with_thermal_bias(mut self, terminal: Terminal, delta_t: f64) -> Self {
        match terminal {
            Terminal::Right => panic!("terminal R is the reference: Delta T_R = 0 always"),
            t => self.delta_temperature[t.index()] = delta_t,
        }
        self
    }

    /// Set the chemical-potential offset of L or P. Panics for the reference terminal.
    pub fn with_potential_bias(mut self, terminal: Terminal, delta_mu: f64) -> Self {
        match terminal {
            Terminal::Right => panic!("terminal R is the reference: Delta mu_R = 0 always"),
            t => self.delta_potential[t.index()] = delta_mu,
        }
        self
    }

    pub fn temperature_of(&self, terminal: Terminal) -> f64 {
        match terminal {
            Terminal::Right => self.temperature,
            t => self.temperature + self.delta_temperature[t.index()],
        }
    }

    pub fn potential_of(&self, terminal: Terminal) -> f64 {
        match terminal {
            Terminal::Right => self.chemical_potential,
            t => self.chemical_potential + self.delta_potential[t.index()],
        }
    }

    /// Generalized forces conjugate to (J_L^N, J_L^Q, J_P^N, J_P^Q).
    pub fn forces(&self) -> ForceVector {
        let t = self.temperature;
        ForceVector {
            x_lv: self.delta_potential[0] / t,
            x_lt: self.delta_temperature[0] / (t * t),
            x_pv: self.delta_potential[1] / t,
            x_pt: self.delta_temperature[1] / (t * t),
        }
    }

    /// Biases exceeding `threshold` relative to T. Linear response is not
    /// enforced as a hard error; callers decide what to do with the report.
    pub fn linear_response_warnings(&self, threshold: f64) -> Vec<BiasWarning> {
        let mut warnings = Vec::new();
        for terminal in [Terminal::Left, Terminal::Probe] {
            let i = terminal.index();
            let thermal = (self.delta_temperature[i] / self.temperature).abs();
            if thermal > threshold {
                warnings.push(BiasWarning {
                    terminal,
                    kind: BiasKind::Thermal,
                    ratio: thermal,
                });
            }
            let electric = (self.delta_potential[i] / self.temperature).abs();
            if electric > threshold {
                warnings.push(BiasWarning {
                    terminal,
                    kind: BiasKind::Electric,
                    ratio: electric,
                });
            }
        }
        warnings
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiasKind {
    Thermal,
    Electric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiasWarning {
    pub terminal: Terminal,
    pub kind: BiasKind,
    pub ratio: f64,
}

/// Generalized forces X conjugate to the flux vector
/// J = (J_L^N, J_L^Q, J_P^N, J_P^Q):
/// X_a^V = Delta V_a / T and X_a^T = Delta T_a / T^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceVector {
    pub x_lv: f64,
    pub x_lt: f64,
    pub x_pv: f64,
    pub x_pt: f64,
}

impl ForceVector {
    /// Thermal-bias ratio xi = X_P^T / X_L^T; undefined without a drive on L.
    pub fn xi(&self) -> Option<f64> {
        (self.x_lt != 0.0).then(|| self.x_pt / self.x_lt)
    }

    /// delta = 1/xi = X_L^T / X_P^T; undefined without a drive on P.
    pub fn delta(&self) -> Option<f64> {
        (self.x_pt != 0.0).then(|| self.x_lt / self.x_pt)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.x_lv, self.x_lt, self.x_pv, self.x_pt]
    }

    /// Forces conjugate to the voltage-probe flux vector (J_L^N, J_L^Q, J_P^Q).
    pub fn reduced(&self) -> [f64; 3] {
        [self.x_lv, self.x_lt, self.x_pt]
    }
}

/// Particle, heat and energy currents per terminal, positive into the
/// conductor. J_a^Q = J_a^U - mu_a J_a^N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentVector {
    pub particle: [f64; 3],
    pub heat: [f64; 3],
    pub energy: [f64; 3],
}

impl CurrentVector {
    pub fn particle_of(&self, terminal: Terminal) -> f64 {
        self.particle[terminal.index()]
    }

    pub fn heat_of(&self, terminal: Terminal) -> f64 {
        self.heat[terminal.index()]
    }

    pub fn energy_of(&self, terminal: Terminal) -> f64 {
        self.energy[terminal.index()]
    }

    pub fn particle_conservation_residual(&self) -> f64 {
        self.particle.iter().sum::<f64>().abs()
    }

    pub fn energy_conservation_residual(&self) -> f64 {
        self.energy.iter().sum::<f64>().abs()
    }
}
