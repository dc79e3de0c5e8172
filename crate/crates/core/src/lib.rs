//! Linear-response thermoelectric transport for three-terminal conductors
//! with voltage and Buttiker probes under broken time-reversal symmetry.
//!
//! The pipeline runs from energy-resolved transmission functions through
//! thermal quadrature to the 4x4 Onsager matrix, eliminates the probe
//! degrees of freedom (voltage probe: no probe particle current; Buttiker
//! probe: additionally no probe heat current), maps the reduced matrices to
//! transport coefficients and engine merit parameters, and evaluates the
//! heat-engine performance surface: power, efficiency at and away from
//! maximum power, and the universal efficiency bounds.
//!
//! Reduced units throughout: h = 1, e = 1, k_B = 1.
//!
//! All values are immutable after construction and all operations are pure,
//! so grids of independent evaluations parallelize freely.

pub mod coefficients;
pub mod dotring;
pub mod error;
pub mod fermi;
pub mod landauer;
pub mod onsager;
pub mod performance;
pub mod quad;
pub mod state;
pub mod transmission;

pub use coefficients::{
    characteristic_parameter, merit_components, merit_set, ButtikerCoefficients, EngineRegime,
    MeritComponents, MeritSet, TransportCoefficients,
};
pub use dotring::DotRingModel;
pub use error::{Error, Result};
pub use fermi::{fermi_derivative, fermi_derivative_moment, occupation, QuadratureSettings};
pub use landauer::landauer_currents;
pub use onsager::{
    assemble_onsager4, assemble_pair, check_bounds, check_bounds_buttiker, effective_two_terminal,
    probe_temperature_elimination, probe_voltage_elimination, reduce_buttiker,
    reduce_voltage_probe, BoundReport, EffectiveTwoTerminal, FieldSign, Onsager2, Onsager3,
    Onsager4, DEFAULT_BOUND_TOLERANCE,
};
pub use performance::{
    bound_functions, carnot_efficiency, carnot_efficiency_buttiker, classify_regime,
    efficiency_at_max_power, efficiency_at_max_power_buttiker, efficiency_at_power_gain,
    efficiency_at_power_gain_buttiker, efficiency_bound, linear_response_currents, load_ratio,
    max_power, normalized_efficiency, normalized_efficiency_buttiker, output_power,
    performance_point, BoundOrientation, Branch, EngineDrive, MaxPower, MeritBounds,
    PerformancePoint, RegimeClass,
};
pub use state::{BiasKind, BiasWarning, CurrentVector, ForceVector, ReservoirState};
pub use transmission::{
    sum_rule_residual, Terminal, Transmission, TransmissionSet, UniformTransmission,
};
