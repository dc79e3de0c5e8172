//! Transport coefficients and engine merit parameters from reduced matrices.

use crate::error::{Error, Result};
use crate::onsager::{FieldSign, Onsager2, Onsager3};

/// Which reservoirs inject heat into the conductor while it produces work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineRegime {
    /// Only the left reservoir injects heat (m = L).
    HeatFromLeft,
    /// Only the probe injects heat (m = P).
    HeatFromProbe,
    /// Both left and probe inject heat (m = LP).
    HeatFromBoth,
}

impl EngineRegime {
    pub const ALL: [EngineRegime; 3] = [
        EngineRegime::HeatFromLeft,
        EngineRegime::HeatFromProbe,
        EngineRegime::HeatFromBoth,
    ];

    pub fn label(self) -> &'static str {
        match self {
            EngineRegime::HeatFromLeft => "L",
            EngineRegime::HeatFromProbe => "P",
            EngineRegime::HeatFromBoth => "LP",
        }
    }
}

/// Seebeck, conductance, thermal conductance and Peltier coefficients of the
/// voltage-probe conductor at field +B.
///
/// The reversed-field Seebeck values are read off the +B matrix (its
/// transposed thermoelectric entries), and the Peltier coefficients are
/// constructed as Pi_ij(B) = T S_ji(-B) from those values, so the relation
/// holds identically. The reversed-field matrix supplies the independent
/// cross-check: by Onsager-Casimir its own Seebeck entries must reproduce
/// the reversed values, which the constructor verifies against quadrature
/// noise and the tests pin quantitatively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransportCoefficients {
    /// S_LL(+B).
    pub seebeck_local: f64,
    /// S_LP(+B).
    pub seebeck_nonlocal: f64,
    /// S_LL(-B).
    pub seebeck_local_rev: f64,
    /// S_LP(-B).
    pub seebeck_nonlocal_rev: f64,
    /// G_LL.
    pub conductance: f64,
    /// K_LL.
    pub thermal_ll: f64,
    /// K_PP.
    pub thermal_pp: f64,
    /// K_LP.
    pub thermal_lp: f64,
    /// K_PL.
    pub thermal_pl: f64,
    /// Pi_LL(+B) = T S_LL(-B).
    pub peltier_local: f64,
    /// Pi_PL(+B) = T S_LP(-B).
    pub peltier_probe: f64,
    pub field: FieldSign,
}

impl TransportCoefficients {
    /// Coefficients from the voltage-probe matrices at both field signs.
    pub fn from_voltage_probe(l3: &Onsager3, l3_rev: &Onsager3, temperature: f64) -> Result<Self> {
        let m = &l3.entries;
        let a11 = m[0][0];
        if !(a11 > 0.0) {
            return Err(Error::DegenerateConductor { value: a11 });
        }
        let r = &l3_rev.entries;
        if !(r[0][0] > 0.0) {
            return Err(Error::DegenerateConductor { value: r[0][0] });
        }
        let t = temperature;
        let t2 = t * t;
        let seebeck_local_rev = m[1][0] / (t * a11);
        let seebeck_nonlocal_rev = m[2][0] / (t * a11);
        Ok(Self {
            seebeck_local: m[0][1] / (t * a11),
            seebeck_nonlocal: m[0][2] / (t * a11),
            seebeck_local_rev,
            seebeck_nonlocal_rev,
            conductance: a11 / t,
            thermal_ll: (m[1][1] * a11 - m[1][0] * m[0][1]) / (t2 * a11),
            thermal_pp: (m[2][2] * a11 - m[2][0] * m[0][2]) / (t2 * a11),
            thermal_lp: (a11 * m[1][2] - m[1][0] * m[0][2]) / (t2 * a11),
            thermal_pl: (a11 * m[2][1] - m[0][1] * m[2][0]) / (t2 * a11),
            peltier_local: t * seebeck_local_rev,
            peltier_probe: t * seebeck_nonlocal_rev,
            field: l3.field,
        })
    }

    /// Largest disagreement between the reversed-field Seebeck values read
    /// off the +B matrix and those computed from the -B matrix directly:
    /// a numerical statement of the Onsager-Casimir relation.
    pub fn casimir_seebeck_residual(&self, l3_rev: &Onsager3, temperature: f64) -> f64 {
        let r = &l3_rev.entries;
        let direct_local = r[0][1] / (temperature * r[0][0]);
        let direct_nonlocal = r[0][2] / (temperature * r[0][0]);
        (self.seebeck_local_rev - direct_local)
            .abs()
            .max((self.seebeck_nonlocal_rev - direct_nonlocal).abs())
    }

    /// The denominator conductance normalizing merit components in `regime`.
    pub fn merit_denominator(&self, regime: EngineRegime) -> f64 {
        match regime {
            EngineRegime::HeatFromLeft => self.thermal_ll,
            EngineRegime::HeatFromProbe => self.thermal_pp,
            EngineRegime::HeatFromBoth => self.thermal_lp,
        }
    }
}

/// Local coefficients of the Buttiker-probe conductor (zero probe heat flow).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ButtikerCoefficients {
    /// S_LL(+B).
    pub seebeck: f64,
    /// S_LL(-B).
    pub seebeck_rev: f64,
    /// G_LL.
    pub conductance: f64,
    /// K_LL.
    pub thermal: f64,
    /// Pi_LL(+B) = T S_LL(-B).
    pub peltier: f64,
    pub field: FieldSign,
}

impl ButtikerCoefficients {
    pub fn from_buttiker(l2: &Onsager2, l2_rev: &Onsager2, temperature: f64) -> Result<Self> {
        let m = &l2.entries;
        let b11 = m[0][0];
        if !(b11 > 0.0) {
            return Err(Error::DegenerateConductor { value: b11 });
        }
        let r = &l2_rev.entries;
        if !(r[0][0] > 0.0) {
            return Err(Error::DegenerateConductor { value: r[0][0] });
        }
        let t = temperature;
        let seebeck_rev = m[1][0] / (t * b11);
        Ok(Self {
            seebeck: m[0][1] / (t * b11),
            seebeck_rev,
            conductance: b11 / t,
            thermal: (m[1][1] * b11 - m[1][0] * m[0][1]) / (t * t * b11),
            peltier: t * seebeck_rev,
            field: l2.field,
        })
    }
}

/// The seven generalized merit components Z_m^theta T, each a dimensionless
/// Seebeck-conductance product normalized by the regime's thermal conductance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeritComponents {
    /// theta = A: S_LL(B) S_LP(B) G.
    pub a: f64,
    /// theta = A': S_LL(B) S_LP(-B) G.
    pub a_prime: f64,
    /// theta = A'': S_LP(B) S_LL(-B) G.
    pub a_double_prime: f64,
    /// theta = B: S_LP(B)^2 G.
    pub b: f64,
    /// theta = B': S_LP(B) S_LP(-B) G.
    pub b_prime: f64,
    /// theta = C: S_LL(B)^2 G.
    pub c: f64,
    /// theta = C': S_LL(B) S_LL(-B) G.
    pub c_prime: f64,
}

impl MeritComponents {
    pub fn as_array(&self) -> [f64; 7] {
        [
            self.a,
            self.a_prime,
            self.a_double_prime,
            self.b,
            self.b_prime,
            self.c,
            self.c_prime,
        ]
    }
}

/// Z_m^theta T for the given regime.
pub fn merit_components(
    coeffs: &TransportCoefficients,
    temperature: f64,
    regime: EngineRegime,
) -> Result<MeritComponents> {
    let k = coeffs.merit_denominator(regime);
    if k == 0.0 {
        return Err(Error::RegimeUndefined {
            denominator: match regime {
                EngineRegime::HeatFromLeft => "K_LL",
                EngineRegime::HeatFromProbe => "K_PP",
                EngineRegime::HeatFromBoth => "K_LP",
            },
        });
    }
    let g = coeffs.conductance;
    let scale = temperature / k;
    let (sll, slp) = (coeffs.seebeck_local, coeffs.seebeck_nonlocal);
    let (sll_r, slp_r) = (coeffs.seebeck_local_rev, coeffs.seebeck_nonlocal_rev);
    Ok(MeritComponents {
        a: sll * slp * g * scale,
        a_prime: sll * slp_r * g * scale,
        a_double_prime: slp * sll_r * g * scale,
        b: slp * slp * g * scale,
        b_prime: slp * slp_r * g * scale,
        c: sll * sll * g * scale,
        c_prime: sll * sll_r * g * scale,
    })
}

/// Engine merit parameters at a fixed thermal-bias ratio delta = X_L^T / X_P^T.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeritSet {
    pub regime: EngineRegime,
    pub delta: f64,
    pub components: MeritComponents,
    /// r_m = (2 delta Z^A + Z^B + delta^2 Z^C) T.
    pub forward_merit: f64,
    /// y_m = (delta (Z^A' + Z^A'') + Z^B' + delta^2 Z^C') T.
    pub figure_of_merit: f64,
    /// x_m = r_m / y_m.
    pub asymmetry: f64,
    /// d_m: thermal-conductance / bias-ratio combination. Reduces to delta^2
    /// in the Buttiker limit.
    pub characteristic: f64,
    /// S_LL(B) / S_LL(-B), the two-terminal asymmetry combination.
    pub buttiker_asymmetry: f64,
    /// G S_LL(B) S_LL(-B) T / K_LL, the two-terminal figure of merit.
    pub buttiker_figure_of_merit: f64,
    /// Z_m T of the time-symmetric case (x_m = 1).
    pub symmetric_merit: f64,
    /// ZT = G S_LL^2 T / K_LL of the time-symmetric Buttiker engine.
    pub buttiker_symmetric_merit: f64,
}

/// Merit parameters for a voltage-probe engine.
pub fn merit_set(
    coeffs: &TransportCoefficients,
    delta: f64,
    temperature: f64,
    regime: EngineRegime,
) -> Result<MeritSet> {
    let z = merit_components(coeffs, temperature, regime)?;
    let forward_merit = 2.0 * delta * z.a + z.b + delta * delta * z.c;
    let figure_of_merit =
        delta * (z.a_prime + z.a_double_prime) + z.b_prime + delta * delta * z.c_prime;
    if figure_of_merit == 0.0 {
        return Err(Error::AsymmetryUndefined);
    }
    let characteristic = characteristic_parameter(coeffs, delta, regime);
    let g = coeffs.conductance;
    let (sll, sll_r) = (coeffs.seebeck_local, coeffs.seebeck_local_rev);
    let k_ll = coeffs.thermal_ll;
    // Time-symmetric combination (2 delta A1 + B1 + delta^2 C1) T / K with the
    // unprimed +B products.
    let symmetric_merit = (2.0 * delta * sll * coeffs.seebeck_nonlocal
        + coeffs.seebeck_nonlocal * coeffs.seebeck_nonlocal
        + delta * delta * sll * sll)
        * g
        * temperature
        / coeffs.merit_denominator(regime);
    Ok(MeritSet {
        regime,
        delta,
        components: z,
        forward_merit,
        figure_of_merit,
        asymmetry: forward_merit / figure_of_merit,
        characteristic,
        buttiker_asymmetry: sll / sll_r,
        buttiker_figure_of_merit: g * sll * sll_r * temperature / k_ll,
        symmetric_merit,
        buttiker_symmetric_merit: g * sll * sll * temperature / k_ll,
    })
}

/// d_m for the given regime.
pub fn characteristic_parameter(
    coeffs: &TransportCoefficients,
    delta: f64,
    regime: EngineRegime,
) -> f64 {
    let (k_ll, k_pp, k_lp, k_pl) = (
        coeffs.thermal_ll,
        coeffs.thermal_pp,
        coeffs.thermal_lp,
        coeffs.thermal_pl,
    );
    match regime {
        EngineRegime::HeatFromLeft => delta * (k_pl + k_lp) / k_ll + k_pp / k_ll + delta * delta,
        EngineRegime::HeatFromProbe => {
            delta * (k_pl + k_lp) / k_pp + delta * delta * k_ll / k_pp + 1.0
        }
        EngineRegime::HeatFromBoth => {
            (delta * k_pl + k_pp) / k_lp + delta * delta * k_ll / k_lp + delta
        }
    }
}

impl MeritSet {
    /// Merit parameters of a Buttiker-probe engine, where the probe exchanges
    /// no heat: the non-local Seebeck products vanish, d reduces to delta^2
    /// and the asymmetry reduces to S_LL(B)/S_LL(-B).
    pub fn from_buttiker(bc: &ButtikerCoefficients, delta: f64, temperature: f64) -> Result<Self> {
        if bc.thermal == 0.0 {
            return Err(Error::RegimeUndefined {
                denominator: "K_LL",
            });
        }
        let scale = bc.conductance * temperature / bc.thermal;
        let zc = bc.seebeck * bc.seebeck * scale;
        let zc_prime = bc.seebeck * bc.seebeck_rev * scale;
        if zc_prime == 0.0 {
            return Err(Error::AsymmetryUndefined);
        }
        let components = MeritComponents {
            a: 0.0,
            a_prime: 0.0,
            a_double_prime: 0.0,
            b: 0.0,
            b_prime: 0.0,
            c: zc,
            c_prime: zc_prime,
        };
        let d2 = delta * delta;
        Ok(MeritSet {
            regime: EngineRegime::HeatFromLeft,
            delta,
            components,
            forward_merit: d2 * zc,
            figure_of_merit: d2 * zc_prime,
            asymmetry: zc / zc_prime,
            characteristic: d2,
            buttiker_asymmetry: bc.seebeck / bc.seebeck_rev,
            buttiker_figure_of_merit: zc_prime,
            symmetric_merit: d2 * zc,
            buttiker_symmetric_merit: zc,
        })
    }
}
