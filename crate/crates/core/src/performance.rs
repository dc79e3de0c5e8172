//! Power, efficiency and universal bounds of the probe heat engine.

use crate::coefficients::{EngineRegime, MeritSet};
use crate::error::{Error, Result};
use crate::onsager::{
    effective_two_terminal, probe_voltage_elimination, reduce_voltage_probe, Onsager3, Onsager4,
};
use crate::state::{CurrentVector, ForceVector};
use crate::transmission::Terminal;

/// Heat currents smaller than this band count as zero during regime
/// classification, which keeps the label stable across crossovers.
pub const ZERO_CURRENT_BAND: f64 = 1e-12;

/// Operating class of the conductor at a given force configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeClass {
    Engine(EngineRegime),
    /// The coldest reservoir injects heat: the device pumps heat, it does not
    /// produce work, and efficiency operations do not apply.
    Refrigerator,
}

impl RegimeClass {
    pub fn label(self) -> &'static str {
        match self {
            RegimeClass::Engine(m) => m.label(),
            RegimeClass::Refrigerator => "REF",
        }
    }
}

/// Classify by the signs of the heat currents into the conductor.
pub fn classify_regime(currents: &CurrentVector) -> Result<RegimeClass> {
    let jq_l = currents.heat_of(Terminal::Left);
    let jq_p = currents.heat_of(Terminal::Probe);
    let jq_r = currents.heat_of(Terminal::Right);
    let tol = ZERO_CURRENT_BAND;
    if jq_l > tol && jq_p > tol {
        Ok(RegimeClass::Engine(EngineRegime::HeatFromBoth))
    } else if jq_l > tol {
        Ok(RegimeClass::Engine(EngineRegime::HeatFromLeft))
    } else if jq_p > tol {
        Ok(RegimeClass::Engine(EngineRegime::HeatFromProbe))
    } else if jq_r > tol {
        Ok(RegimeClass::Refrigerator)
    } else {
        Err(Error::NoEngineRegime)
    }
}

/// Heat absorbed from the hot side(s) in the given regime.
pub fn heat_input(currents: &CurrentVector, regime: EngineRegime) -> f64 {
    let jq_l = currents.heat_of(Terminal::Left);
    let jq_p = currents.heat_of(Terminal::Probe);
    match regime {
        EngineRegime::HeatFromLeft => jq_l,
        EngineRegime::HeatFromProbe => jq_p,
        EngineRegime::HeatFromBoth => jq_l + jq_p,
    }
}

/// Carnot efficiency of the three-terminal engine at the given operating
/// point: (Delta T_P J_P^Q + Delta T_L J_L^Q) / (T * heat input).
pub fn carnot_efficiency(
    currents: &CurrentVector,
    delta_t_l: f64,
    delta_t_p: f64,
    temperature: f64,
    regime: EngineRegime,
) -> Result<f64> {
    let denominator = heat_input(currents, regime);
    if denominator == 0.0 {
        return Err(Error::ZeroCarnotDenominator {
            regime: regime.label(),
        });
    }
    let numerator = delta_t_p * currents.heat_of(Terminal::Probe)
        + delta_t_l * currents.heat_of(Terminal::Left);
    Ok(numerator / (temperature * denominator))
}

/// Carnot efficiency in the Buttiker limit (no probe heat): Delta T_L / T.
pub fn carnot_efficiency_buttiker(delta_t_l: f64, temperature: f64) -> f64 {
    delta_t_l / temperature
}

/// Output power with the probe particle current blocked:
/// P = -T J_L^N X_L^V.
pub fn output_power(l3: &Onsager3, x_lv: f64, x_lt: f64, x_pt: f64, temperature: f64) -> f64 {
    let j_ln = l3.apply([x_lv, x_lt, x_pt])[0];
    -temperature * j_ln * x_lv
}

#[derive(Debug, Clone, Copy)]
pub struct MaxPower {
    /// The load force X_L^V* that maximizes the output power.
    pub optimal_load_force: f64,
    /// P_max = (T^4 / 4) G S^2 (X_L^T)^2 with S = S_LL + S_LP xi.
    pub power: f64,
}

/// Stationary point of the power over the load force at fixed thermal forces.
pub fn max_power(l3: &Onsager3, x_lt: f64, x_pt: f64, temperature: f64) -> Result<MaxPower> {
    if x_lt == 0.0 {
        return Err(Error::ZeroThermalDrive);
    }
    let xi = x_pt / x_lt;
    let eff = effective_two_terminal(l3, xi);
    if !(eff.l11 > 0.0) {
        return Err(Error::DegenerateConductor { value: eff.l11 });
    }
    let optimal_load_force = -eff.l12 / (2.0 * eff.l11) * x_lt;
    let conductance = eff.l11 / temperature;
    let seebeck_sum = eff.l12 / (temperature * eff.l11);
    let t4 = temperature.powi(4);
    let power = 0.25 * t4 * conductance * seebeck_sum * seebeck_sum * x_lt * x_lt;
    Ok(MaxPower {
        optimal_load_force,
        power,
    })
}

/// Efficiency at maximum power: (eta_c / 2) x y / (y + 2d).
pub fn efficiency_at_max_power(merit: &MeritSet, carnot_at_max_power: f64) -> Result<f64> {
    let denominator = merit.figure_of_merit + 2.0 * merit.characteristic;
    if denominator == 0.0 {
        return Err(Error::SingularMeritDenominator);
    }
    Ok(0.5 * carnot_at_max_power * merit.asymmetry * merit.figure_of_merit / denominator)
}

/// Buttiker-limit efficiency at maximum power: (eta_c / 2) x y / (y + 2).
pub fn efficiency_at_max_power_buttiker(
    asymmetry: f64,
    figure_of_merit: f64,
    carnot: f64,
) -> Result<f64> {
    let denominator = figure_of_merit + 2.0;
    if denominator == 0.0 {
        return Err(Error::SingularMeritDenominator);
    }
    Ok(0.5 * carnot * asymmetry * figure_of_merit / denominator)
}

/// Normalized efficiency eta / eta(P_max) at load ratio eps = X_L^V / X_L^V*:
///
/// ```text
/// eps (2 - eps) (y + 2d) / (2(y + d) - y eps)
/// ```
///
/// Exactly 1 at eps = 1, and the power ratio itself is eps (2 - eps).
pub fn normalized_efficiency(load: f64, figure_of_merit: f64, characteristic: f64) -> Result<f64> {
    let (y, d) = (figure_of_merit, characteristic);
    // 2(y + d) - y eps, grouped so the eps = 1 value is exactly 1.
    let denominator = (y + 2.0 * d) + y * (1.0 - load);
    if denominator == 0.0 {
        return Err(Error::SingularLoad { load });
    }
    Ok(load * (2.0 - load) * (y + 2.0 * d) / denominator)
}

/// Buttiker-limit normalized efficiency: the d = 1 structure
/// eps (2 - eps) (y + 2) / (2(y + 1) - y eps).
pub fn normalized_efficiency_buttiker(load: f64, figure_of_merit: f64) -> Result<f64> {
    let y = figure_of_merit;
    let denominator = (y + 2.0) + y * (1.0 - load);
    if denominator == 0.0 {
        return Err(Error::SingularLoad { load });
    }
    Ok(load * (2.0 - load) * (y + 2.0) / denominator)
}

/// The two load branches at a given power gain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// eps = 1 + sqrt(-dP): the favorable case.
    Plus,
    /// eps = 1 - sqrt(-dP).
    Minus,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

/// eps_+- = 1 +- sqrt(-dP) for a power gain in [-1, 0].
pub fn load_ratio(power_gain: f64, branch: Branch) -> Result<f64> {
    if !(-1.0..=0.0).contains(&power_gain) {
        return Err(Error::PowerGainOutOfRange { value: power_gain });
    }
    let root = (-power_gain).sqrt();
    Ok(match branch {
        Branch::Plus => 1.0 + root,
        Branch::Minus => 1.0 - root,
    })
}

/// Efficiency at a given power gain:
///
/// ```text
/// eta = (eta_c / 2) x y (1 + dP) / [2(y + d) - (1 +- sqrt(-dP)) y]
/// ```
///
/// `carnot` is the Carnot efficiency at the corresponding operating point.
pub fn efficiency_at_power_gain(
    power_gain: f64,
    branch: Branch,
    merit: &MeritSet,
    carnot: f64,
) -> Result<f64> {
    let load = load_ratio(power_gain, branch)?;
    let (y, d) = (merit.figure_of_merit, merit.characteristic);
    let denominator = (y + 2.0 * d) + y * (1.0 - load);
    if denominator == 0.0 {
        return Err(Error::SingularLoad { load });
    }
    Ok(0.5 * carnot * merit.asymmetry * y * (1.0 + power_gain) / denominator)
}

/// Buttiker-limit variant of `efficiency_at_power_gain` (d = 1 structure).
pub fn efficiency_at_power_gain_buttiker(
    power_gain: f64,
    branch: Branch,
    asymmetry: f64,
    figure_of_merit: f64,
    carnot: f64,
) -> Result<f64> {
    let load = load_ratio(power_gain, branch)?;
    let y = figure_of_merit;
    let denominator = (y + 2.0) + y * (1.0 - load);
    if denominator == 0.0 {
        return Err(Error::SingularLoad { load });
    }
    Ok(0.5 * carnot * asymmetry * y * (1.0 + power_gain) / denominator)
}

/// Which side of the figure of merit the bound function constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundOrientation {
    /// y in [0, H]: H is an upper bound on a non-negative figure of merit.
    UpperBound,
    /// y in [H, 0]: H is a lower bound on a non-positive figure of merit.
    LowerBound,
}

/// The bound functions limiting the figure of merit at a given asymmetry.
#[derive(Debug, Clone, Copy)]
pub struct MeritBounds {
    /// H_m = d x / (x - 1)^2 for the voltage-probe engine.
    pub voltage_probe: f64,
    /// H = x / (x - 1)^2, the Buttiker-probe reference.
    pub buttiker: f64,
}

impl MeritBounds {
    /// Orientation of the voltage-probe bound. Positive d keeps the familiar
    /// orientation; negative d (regime LP) reverses it.
    pub fn orientation(&self) -> BoundOrientation {
        if self.voltage_probe >= 0.0 {
            BoundOrientation::UpperBound
        } else {
            BoundOrientation::LowerBound
        }
    }

    /// Whether a figure of merit lies between 0 and H_m (inclusive, with
    /// tolerance).
    pub fn admits(&self, figure_of_merit: f64, tolerance: f64) -> bool {
        let h = self.voltage_probe;
        let sign = if h >= 0.0 { 1.0 } else { -1.0 };
        sign * figure_of_merit >= -tolerance && sign * (h - figure_of_merit) >= -tolerance
    }
}

/// H_m and H at the given asymmetry; x = 1 is a pole (the figure of merit is
/// unbounded there, matching the divergence of the time-symmetric merit).
pub fn bound_functions(asymmetry: f64, characteristic: f64) -> Result<MeritBounds> {
    if asymmetry == 1.0 {
        return Err(Error::AsymmetryPole);
    }
    let spread = (asymmetry - 1.0) * (asymmetry - 1.0);
    Ok(MeritBounds {
        voltage_probe: characteristic * asymmetry / spread,
        buttiker: asymmetry / spread,
    })
}

/// Upper bound on the efficiency at a given power gain, reached at y = H_m:
///
/// ```text
/// eta_bound = (eta_c / 2) x^2 (1 + dP) / [2(x^2 - x + 1) - (1 +- sqrt(-dP)) x]
/// ```
pub fn efficiency_bound(
    asymmetry: f64,
    power_gain: f64,
    branch: Branch,
    carnot: f64,
) -> Result<f64> {
    let load = load_ratio(power_gain, branch)?;
    let x = asymmetry;
    let denominator = 2.0 * (x * x - x + 1.0) - load * x;
    if denominator == 0.0 {
        return Err(Error::SingularLoad { load });
    }
    Ok(0.5 * carnot * x * x * (1.0 + power_gain) / denominator)
}

/// Free forces driving the voltage-probe engine; the probe voltage force is
/// determined by the zero-particle-current condition.
#[derive(Debug, Clone, Copy)]
pub struct EngineDrive {
    /// X_L^V.
    pub load_force: f64,
    /// X_L^T.
    pub thermal_force: f64,
    /// X_P^T.
    pub probe_thermal_force: f64,
}

/// Linear-response currents of the full conductor, completed by conservation:
/// the reference terminal carries the balance of particles and energy.
pub fn linear_response_currents(
    l4: &Onsager4,
    forces: &ForceVector,
    temperature: f64,
    chemical_potential: f64,
) -> CurrentVector {
    let fluxes = l4.apply(forces.as_array());
    let [j_ln, j_lq, j_pn, j_pq] = fluxes;
    let j_rn = -(j_ln + j_pn);
    let mu = chemical_potential;
    let mu_l = mu + temperature * forces.x_lv;
    let mu_p = mu + temperature * forces.x_pv;
    let u_l = j_lq + mu_l * j_ln;
    let u_p = j_pq + mu_p * j_pn;
    let u_r = -(u_l + u_p);
    let j_rq = u_r - mu * j_rn;
    CurrentVector {
        particle: [j_ln, j_pn, j_rn],
        heat: [j_lq, j_pq, j_rq],
        energy: [u_l, u_p, u_r],
    }
}

/// A fully evaluated operating point of the voltage-probe engine.
///
/// Efficiencies are the physical current ratios P / (heat input); the closed
/// forms above reproduce them through the merit parameters. `power_gain` and
/// `load_ratio` are meaningful only when the maximum power is positive.
#[derive(Debug, Clone, Copy)]
pub struct PerformancePoint {
    pub forces: ForceVector,
    pub currents: CurrentVector,
    pub regime: RegimeClass,
    pub power: f64,
    pub max_power: f64,
    pub optimal_load_force: f64,
    /// dP = (P - P_max) / P_max, in [-1, 0] for engine operation.
    pub power_gain: f64,
    /// eps = X_L^V / X_L^V*.
    pub load_ratio: f64,
    pub branch: Branch,
    /// P / heat input; `None` outside engine regimes.
    pub efficiency: Option<f64>,
    /// Efficiency re-evaluated at X_L^V = X_L^V*.
    pub efficiency_at_max_power: Option<f64>,
    /// Carnot efficiency at this operating point.
    pub carnot: Option<f64>,
    /// Carnot efficiency re-evaluated at X_L^V = X_L^V*.
    pub carnot_at_max_power: Option<f64>,
}

impl PerformancePoint {
    pub fn is_engine(&self) -> bool {
        matches!(self.regime, RegimeClass::Engine(_)) && self.power > 0.0
    }
}

/// Evaluate currents, power, regime and efficiencies at one force
/// configuration of the voltage-probe engine.
pub fn performance_point(
    l4: &Onsager4,
    drive: &EngineDrive,
    temperature: f64,
    chemical_potential: f64,
) -> Result<PerformancePoint> {
    let l3 = reduce_voltage_probe(l4)?;
    let elimination = probe_voltage_elimination(l4)?;
    let forces_at = |x_lv: f64| ForceVector {
        x_lv,
        x_lt: drive.thermal_force,
        x_pv: elimination.probe_voltage(x_lv, drive.thermal_force, drive.probe_thermal_force),
        x_pt: drive.probe_thermal_force,
    };

    let forces = forces_at(drive.load_force);
    let currents = linear_response_currents(l4, &forces, temperature, chemical_potential);
    let regime = classify_regime(&currents)?;
    let power = -temperature * currents.particle_of(Terminal::Left) * forces.x_lv;
    let peak = max_power(
        &l3,
        drive.thermal_force,
        drive.probe_thermal_force,
        temperature,
    )?;
    let power_gain = (power - peak.power) / peak.power;
    let load = forces.x_lv / peak.optimal_load_force;
    let branch = if load >= 1.0 {
        Branch::Plus
    } else {
        Branch::Minus
    };

    let delta_t_l = temperature * temperature * drive.thermal_force;
    let delta_t_p = temperature * temperature * drive.probe_thermal_force;
    let (efficiency, carnot) = match regime {
        RegimeClass::Engine(m) => (
            Some(power / heat_input(&currents, m)),
            Some(carnot_efficiency(
                &currents,
                delta_t_l,
                delta_t_p,
                temperature,
                m,
            )?),
        ),
        RegimeClass::Refrigerator => (None, None),
    };

    let star_forces = forces_at(peak.optimal_load_force);
    let star_currents = linear_response_currents(l4, &star_forces, temperature, chemical_potential);
    let (efficiency_at_max_power, carnot_at_max_power) = match classify_regime(&star_currents) {
        Ok(RegimeClass::Engine(m)) => (
            Some(peak.power / heat_input(&star_currents, m)),
            Some(carnot_efficiency(
                &star_currents,
                delta_t_l,
                delta_t_p,
                temperature,
                m,
            )?),
        ),
        _ => (None, None),
    };

    Ok(PerformancePoint {
        forces,
        currents,
        regime,
        power,
        max_power: peak.power,
        optimal_load_force: peak.optimal_load_force,
        power_gain,
        load_ratio: load,
        branch,
        efficiency,
        efficiency_at_max_power,
        carnot,
        carnot_at_max_power,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::onsager::FieldSign;

    fn currents_with_heat(jq_l: f64, jq_p: f64, jq_r: f64) -> CurrentVector {
        CurrentVector {
            particle: [0.0; 3],
            heat: [jq_l, jq_p, jq_r],
            energy: [0.0; 3],
        }
    }

    #[test]
    fn regime_classification_by_heat_signs() {
        let lp = classify_regime(&currents_with_heat(1.0, 0.5, -1.5)).unwrap();
        assert_eq!(lp, RegimeClass::Engine(EngineRegime::HeatFromBoth));
        let l = classify_regime(&currents_with_heat(1.0, -0.2, -0.8)).unwrap();
        assert_eq!(l, RegimeClass::Engine(EngineRegime::HeatFromLeft));
        let p = classify_regime(&currents_with_heat(-0.2, 1.0, -0.8)).unwrap();
        assert_eq!(p, RegimeClass::Engine(EngineRegime::HeatFromProbe));
        let r = classify_regime(&currents_with_heat(-0.3, -0.2, 0.5)).unwrap();
        assert_eq!(r, RegimeClass::Refrigerator);
        assert!(matches!(
            classify_regime(&currents_with_heat(-0.3, -0.2, -0.5)),
            Err(Error::NoEngineRegime)
        ));
    }

    #[test]
    fn classification_tolerates_round_off_noise() {
        let c = currents_with_heat(1.0, 1e-15, -1.0);
        assert_eq!(
            classify_regime(&c).unwrap(),
            RegimeClass::Engine(EngineRegime::HeatFromLeft)
        );
    }

    #[test]
    fn carnot_reduces_to_two_terminal_form_without_probe_heat() {
        let c = currents_with_heat(0.8, 0.0, -0.8);
        let eta = carnot_efficiency(&c, 0.05, 0.02, 1.0, EngineRegime::HeatFromLeft).unwrap();
        assert!((eta - 0.05).abs() < 1e-15);
        assert_eq!(carnot_efficiency_buttiker(0.05, 1.0), 0.05);
    }

    #[test]
    fn carnot_splits_between_hot_reservoirs() {
        let c = currents_with_heat(0.6, 0.4, -1.0);
        let eta = carnot_efficiency(&c, 0.05, 0.0, 1.0, EngineRegime::HeatFromBoth).unwrap();
        let expected = 0.05 * 0.6 / (0.6 + 0.4);
        assert!((eta - expected).abs() < 1e-15);
    }

    #[test]
    fn max_power_vanishes_without_thermoelectric_coupling() {
        let entries = [[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 3.0]];
        let l3 = Onsager3 {
            entries,
            field: FieldSign::Plus,
        };
        let mp = max_power(&l3, 0.1, 0.05, 1.0).unwrap();
        assert_eq!(mp.optimal_load_force, 0.0);
        assert_eq!(mp.power, 0.0);
    }

    #[test]
    fn max_power_is_quadratic_in_the_thermal_drive() {
        let entries = [[1.0, 0.4, 0.1], [0.4, 2.0, 0.2], [0.1, 0.2, 3.0]];
        let l3 = Onsager3 {
            entries,
            field: FieldSign::Plus,
        };
        let a = max_power(&l3, 0.1, 0.05, 1.0).unwrap();
        let b = max_power(&l3, 0.2, 0.1, 1.0).unwrap();
        assert!((b.power - 4.0 * a.power).abs() < 1e-14 * b.power.abs().max(1.0));
    }

    #[test]
    fn zero_thermal_drive_is_rejected() {
        let entries = [[1.0, 0.4, 0.1], [0.4, 2.0, 0.2], [0.1, 0.2, 3.0]];
        let l3 = Onsager3 {
            entries,
            field: FieldSign::Plus,
        };
        assert!(matches!(
            max_power(&l3, 0.0, 0.1, 1.0),
            Err(Error::ZeroThermalDrive)
        ));
    }

    #[test]
    fn normalized_efficiency_is_one_at_peak_load() {
        for &(y, d) in &[(0.5, 0.1), (2.0, 1.0), (10.0, 5.0), (-0.3, -1.2)] {
            assert_eq!(normalized_efficiency(1.0, y, d).unwrap(), 1.0);
        }
        assert_eq!(normalized_efficiency_buttiker(1.0, 3.0).unwrap(), 1.0);
    }

    #[test]
    fn unit_characteristic_matches_buttiker_form() {
        for i in 0..40 {
            let eps = 0.05 + 1.9 * (i as f64) / 39.0;
            for &y in &[0.5, 1.0, 2.0, 5.0, 10.0, 50.0] {
                let vp = normalized_efficiency(eps, y, 1.0).unwrap();
                let btk = normalized_efficiency_buttiker(eps, y).unwrap();
                assert!((vp - btk).abs() < 1e-15, "eps={eps} y={y}");
            }
        }
    }

    #[test]
    fn small_characteristic_beats_buttiker_past_peak_load() {
        let vp = normalized_efficiency(1.5, 5.0, 0.1).unwrap();
        let btk = normalized_efficiency_buttiker(1.5, 5.0).unwrap();
        assert!(vp > btk, "vp={vp} btk={btk}");
    }

    #[test]
    fn load_branches_satisfy_power_identity() {
        for i in 0..=100 {
            let gain = -(i as f64) / 100.0;
            for branch in [Branch::Plus, Branch::Minus] {
                let eps = load_ratio(gain, branch).unwrap();
                assert!((eps * (2.0 - eps) - (1.0 + gain)).abs() < 1e-12);
            }
        }
        assert!(matches!(
            load_ratio(0.1, Branch::Plus),
            Err(Error::PowerGainOutOfRange { .. })
        ));
        assert!(matches!(
            load_ratio(-1.5, Branch::Minus),
            Err(Error::PowerGainOutOfRange { .. })
        ));
    }

    #[test]
    fn zero_power_gain_recovers_peak_efficiency() {
        let merit = mock_merit(1.3, 4.0, 0.7);
        let carnot = 0.08;
        let at_peak = efficiency_at_max_power(&merit, carnot).unwrap();
        for branch in [Branch::Plus, Branch::Minus] {
            let eta = efficiency_at_power_gain(0.0, branch, &merit, carnot).unwrap();
            assert!((eta - at_peak).abs() < 1e-15);
        }
    }

    #[test]
    fn vanishing_figure_of_merit_kills_the_output() {
        let merit = mock_merit(1.3, 0.0, 0.7);
        assert_eq!(efficiency_at_max_power(&merit, 0.08).unwrap(), 0.0);
    }

    #[test]
    fn huge_merit_approaches_curzon_ahlborn() {
        // x = 1, y -> infinity: the Buttiker engine reaches eta_c/2.
        let carnot = 0.06;
        let eta = efficiency_at_max_power_buttiker(1.0, 1e12, carnot).unwrap();
        assert!((eta - carnot / 2.0).abs() < 1e-11 * carnot);
    }

    #[test]
    fn full_power_sacrifice_gives_zero_efficiency() {
        let merit = mock_merit(1.3, 4.0, 0.7);
        for branch in [Branch::Plus, Branch::Minus] {
            let eta = efficiency_at_power_gain(-1.0, branch, &merit, 0.08).unwrap();
            assert_eq!(eta, 0.0);
        }
    }

    #[test]
    fn favorable_branch_is_non_monotonic_for_small_characteristic() {
        // Dense scan: an interior maximum exists for y = 10, d = 0.5, x = 1.
        let merit = mock_merit(1.0, 10.0, 0.5);
        let eta = |gain: f64| efficiency_at_power_gain(gain, Branch::Plus, &merit, 1.0).unwrap();
        let n = 2000;
        let mut best = f64::MIN;
        let mut best_i = 0;
        for i in 0..=n {
            let gain = -1.0 + i as f64 / n as f64;
            let v = eta(gain);
            if v > best {
                best = v;
                best_i = i;
            }
        }
        assert!(best_i > 0 && best_i < n, "maximum sits at the boundary");
        assert!(best > eta(0.0) && best > eta(-1.0));
    }

    #[test]
    fn bound_functions_reference_values() {
        let b = bound_functions(2.0, 1.0).unwrap();
        assert!((b.voltage_probe - 2.0).abs() < 1e-15);
        assert!((b.buttiker - 2.0).abs() < 1e-15);

        let b = bound_functions(-1.0, 1.0).unwrap();
        assert!((b.buttiker + 0.25).abs() < 1e-15);
        assert_eq!(b.orientation(), BoundOrientation::LowerBound);

        // Negative characteristic reverses the orientation.
        let b = bound_functions(-1.0, -1.0).unwrap();
        assert!((b.voltage_probe - 0.25).abs() < 1e-15);
        assert_eq!(b.orientation(), BoundOrientation::UpperBound);

        assert!(matches!(
            bound_functions(1.0, 1.0),
            Err(Error::AsymmetryPole)
        ));
    }

    #[test]
    fn bound_admission_is_sign_aware() {
        let b = bound_functions(2.0, 1.0).unwrap(); // H_m = 2
        assert!(b.admits(1.5, 1e-9));
        assert!(b.admits(0.0, 1e-9));
        assert!(!b.admits(2.5, 1e-9));
        assert!(!b.admits(-0.5, 1e-9));

        let b = bound_functions(0.7, -1.59).unwrap(); // H_m < 0
        assert!(b.admits(-0.09, 1e-9));
        assert!(!b.admits(0.09, 1e-9));
        assert!(!b.admits(b.voltage_probe - 1.0, 1e-9));
    }

    #[test]
    fn efficiency_bound_limits() {
        // Curzon-Ahlborn point.
        let eta = efficiency_bound(1.0, 0.0, Branch::Plus, 0.1).unwrap();
        assert_eq!(eta, 0.05);
        // Strong asymmetry asymptote (eta_c / 4)(1 + dP).
        for &gain in &[0.0, -0.3, -0.9] {
            for &x in &[1e6, -1e6] {
                let eta = efficiency_bound(x, gain, Branch::Plus, 1.0).unwrap();
                let asymptote = 0.25 * (1.0 + gain);
                assert!(
                    (eta - asymptote).abs() <= 1e-5 * asymptote.max(1e-30),
                    "x={x} gain={gain}: {eta} vs {asymptote}"
                );
            }
        }
        // x = 0 kills the bound.
        assert_eq!(efficiency_bound(0.0, -0.2, Branch::Plus, 1.0).unwrap(), 0.0);
    }

    fn mock_merit(x: f64, y: f64, d: f64) -> MeritSet {
        use crate::coefficients::MeritComponents;
        MeritSet {
            regime: EngineRegime::HeatFromLeft,
            delta: 1.0,
            components: MeritComponents {
                a: 0.0,
                a_prime: 0.0,
                a_double_prime: 0.0,
                b: 0.0,
                b_prime: 0.0,
                c: 0.0,
                c_prime: 0.0,
            },
            forward_merit: x * y,
            figure_of_merit: y,
            asymmetry: x,
            characteristic: d,
            buttiker_asymmetry: x,
            buttiker_figure_of_merit: y,
            symmetric_merit: y,
            buttiker_symmetric_merit: y,
        }
    }
}
