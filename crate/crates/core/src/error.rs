//! Error types shared across the transport pipeline.

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The integrand produced NaN or infinity inside the quadrature window.
    #[error("non-finite integrand value at energy {energy}")]
    NonFiniteIntegrand { energy: f64 },

    /// Adaptive refinement exhausted its interval budget above the requested
    /// absolute tolerance.
    #[error("quadrature stalled at error estimate {achieved:e} (requested {requested:e})")]
    QuadratureTolerance { requested: f64, achieved: f64 },

    /// Green-function inversion exceeded the conditioning limit.
    #[error("ill-conditioned Green function at energy {energy} (condition {condition:e})")]
    IllConditioned { energy: f64, condition: f64 },

    /// A probe elimination hit a zero pivot: the probe is decoupled from the
    /// conductor, which is a configuration mistake rather than a numerical edge.
    #[error("singular probe elimination: {pivot} vanishes (probe decoupled)")]
    SingularElimination { pivot: &'static str },

    /// The electrical diagonal of a reduced matrix is not positive.
    #[error("degenerate conductor: leading Onsager entry is {value}")]
    DegenerateConductor { value: f64 },

    /// The thermal conductance that normalizes the requested regime vanishes.
    #[error("regime undefined: thermal conductance {denominator} is zero")]
    RegimeUndefined { denominator: &'static str },

    /// The generalized figure of merit vanishes, leaving the asymmetry
    /// parameter x = r/y undefined.
    #[error("asymmetry parameter undefined: figure of merit is zero")]
    AsymmetryUndefined,

    /// No terminal injects heat into the conductor.
    #[error("no engine regime: all heat currents are non-positive")]
    NoEngineRegime,

    /// Maximum-power analysis requires a thermal drive on the left terminal.
    #[error("zero thermal drive: X_L^T = 0")]
    ZeroThermalDrive,

    /// The heat current normalizing the Carnot efficiency vanishes.
    #[error("degenerate Carnot efficiency: zero heat input in regime {regime}")]
    ZeroCarnotDenominator { regime: &'static str },

    /// A power gain outside the physical interval [-1, 0].
    #[error("power gain {value} outside [-1, 0]")]
    PowerGainOutOfRange { value: f64 },

    /// The load denominator of the normalized-efficiency expression vanishes.
    #[error("singular load: efficiency denominator vanishes at eps = {load}")]
    SingularLoad { load: f64 },

    /// y + 2d = 0 in the maximum-power efficiency.
    #[error("singular merit combination: y + 2d = 0")]
    SingularMeritDenominator,

    /// The bound function H has a pole at unit asymmetry.
    #[error("asymmetry pole: x = 1 (figure of merit unbounded)")]
    AsymmetryPole,
}
