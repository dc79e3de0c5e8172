//! Harness configuration: a TOML file with nested sections, overridable by
//! CLI flags. Flags win over file values, which win over defaults.

use std::fmt;
use std::path::PathBuf;

use probe_engine::{DotRingModel, QuadratureSettings};
use serde::{Deserialize, Serialize};

/// Uniformly spaced closed interval.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, count: usize) -> Self {
        Self { min, max, count }
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.max
                } else {
                    self.min + step * i as f64
                }
            })
            .collect()
    }

    fn check(&self, label: &str, errors: &mut Vec<String>) {
        if self.count < 2 {
            errors.push(format!("{label}.count must be >= 2, got {}", self.count));
        }
        if !(self.min < self.max) {
            errors.push(format!(
                "{label} range is degenerate: min {} must be below max {}",
                self.min, self.max
            ));
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            errors.push(format!("{label} range must be finite"));
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct ModelConfig {
    pub site_energies: [f64; 3],
    pub couplings: [f64; 3],
    pub hopping: f64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        let m = DotRingModel::canonical();
        Self {
            site_energies: m.site_energies,
            couplings: m.couplings,
            hopping: m.hopping,
        }
    }
}

impl ModelConfig {
    pub fn model_at_flux(&self, flux_phase: f64) -> DotRingModel {
        DotRingModel {
            site_energies: self.site_energies,
            couplings: self.couplings,
            hopping: self.hopping,
            flux_phase,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    /// Flux phase phi, radians.
    pub phi: GridSpec,
    /// Thermal-bias ratio delta = X_L^T / X_P^T.
    pub delta: GridSpec,
    /// Load ratio eps, inside (0, 2).
    pub load: GridSpec,
    /// Power gain, inside [-1, 0].
    pub power_gain: GridSpec,
    /// Asymmetry parameter x_m.
    pub asymmetry: GridSpec,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            phi: GridSpec::new(0.05, 2.0 * std::f64::consts::PI - 0.05, 80),
            delta: GridSpec::new(0.05, 2.0, 80),
            load: GridSpec::new(0.01, 1.99, 199),
            power_gain: GridSpec::new(-1.0, 0.0, 201),
            asymmetry: GridSpec::new(-4.0, 4.0, 401),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct FigureConfig {
    /// Characteristic parameters d for the load and gain figures.
    pub d_values: Vec<f64>,
    /// Characteristic parameters for the bound-function figure, both signs.
    pub d_values_fig2: Vec<f64>,
    /// Figures of merit y.
    pub y_values: Vec<f64>,
}

impl Default for FigureConfig {
    fn default() -> Self {
        Self {
            d_values: vec![0.1, 0.5, 1.0, 3.0, 5.0],
            d_values_fig2: vec![0.1, 0.5, 1.0, 3.0, 5.0, -0.1, -0.5, -1.0, -3.0, -5.0],
            y_values: vec![0.5, 1.0, 2.0, 5.0, 10.0, 50.0],
        }
    }
}

/// Restrict sweep rows to one operating class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RegimeFilter {
    #[default]
    All,
    L,
    P,
    Lp,
    Refrigerator,
}

impl RegimeFilter {
    /// Whether a row with the given regime label survives the filter.
    pub fn keeps(self, label: &str) -> bool {
        match self {
            RegimeFilter::All => true,
            RegimeFilter::L => label == "L",
            RegimeFilter::P => label == "P",
            RegimeFilter::Lp => label == "LP",
            RegimeFilter::Refrigerator => label == "REF",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RegimeFilter::All => "all",
            RegimeFilter::L => "L",
            RegimeFilter::P => "P",
            RegimeFilter::Lp => "LP",
            RegimeFilter::Refrigerator => "REF",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct DriveConfig {
    /// X_L^T grid points of the sweep (the force scale).
    pub thermal_forces: Vec<f64>,
    /// Load ratio eps the sweep operates at.
    pub load_ratio: f64,
    /// Keep only sweep rows in this operating class.
    pub regime_filter: RegimeFilter,
    /// Bias-to-temperature ratio above which the harness warns that linear
    /// response is marginal.
    pub bias_warning_threshold: f64,
}

impl Default for DriveConfig {
    fn default() -> Self {
        Self {
            thermal_forces: vec![0.01],
            load_ratio: 1.0,
            regime_filter: RegimeFilter::All,
            bias_warning_threshold: probe_engine::state::DEFAULT_BIAS_WARNING_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct QuadratureConfig {
    pub window_widths: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
    pub initial_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        let s = QuadratureSettings::default();
        Self {
            window_widths: s.window_widths,
            abs_tol: s.abs_tol,
            max_intervals: s.max_intervals,
            initial_subdivisions: s.initial_subdivisions,
        }
    }
}

impl QuadratureConfig {
    pub fn settings(&self) -> QuadratureSettings {
        QuadratureSettings {
            window_widths: self.window_widths,
            abs_tol: self.abs_tol,
            max_intervals: self.max_intervals,
            initial_subdivisions: self.initial_subdivisions,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchChoice {
    Plus,
    Minus,
}

impl BranchChoice {
    pub fn branch(self) -> probe_engine::Branch {
        match self {
            BranchChoice::Plus => probe_engine::Branch::Plus,
            BranchChoice::Minus => probe_engine::Branch::Minus,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub format: OutputFormat,
    /// Output file; defaults to `<dataset>.<ext>` in the working directory.
    pub path: Option<PathBuf>,
    /// Worker threads; 0 picks the environment override or the core count.
    pub workers: usize,
    pub branch: BranchChoice,
    /// Pass tolerance on bound residuals.
    pub tolerance: f64,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            format: OutputFormat::Csv,
            path: None,
            workers: 0,
            branch: BranchChoice::Plus,
            tolerance: probe_engine::DEFAULT_BOUND_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, Default, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub model: ModelConfig,
    pub grid: GridConfig,
    pub figures: FigureConfig,
    pub drive: DriveConfig,
    pub quadrature: QuadratureConfig,
    pub output: OutputConfig,
}

/// Field-level configuration failures, reported all at once.
#[derive(Debug, Clone)]
pub struct ConfigError {
    pub problems: Vec<String>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "invalid configuration:")?;
        for p in &self.problems {
            writeln!(f, "  - {p}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigError {}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let config: SweepConfig = toml::from_str(text).map_err(|e| ConfigError {
            problems: vec![format!("parse error: {e}")],
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut errors = Vec::new();
        self.grid.phi.check("grid.phi", &mut errors);
        self.grid.delta.check("grid.delta", &mut errors);
        self.grid.load.check("grid.load", &mut errors);
        self.grid.power_gain.check("grid.power_gain", &mut errors);
        self.grid.asymmetry.check("grid.asymmetry", &mut errors);
        if self.grid.power_gain.min < -1.0 || self.grid.power_gain.max > 0.0 {
            errors.push(format!(
                "grid.power_gain must stay inside [-1, 0], got [{}, {}]",
                self.grid.power_gain.min, self.grid.power_gain.max
            ));
        }
        if self.grid.load.min <= 0.0 || self.grid.load.max >= 2.0 {
            errors.push(format!(
                "grid.load must stay inside (0, 2), got [{}, {}]",
                self.grid.load.min, self.grid.load.max
            ));
        }
        if let Err(msg) = self.model.model_at_flux(0.0).validate() {
            errors.push(format!("model: {msg}"));
        }
        if self.figures.d_values.is_empty() {
            errors.push("figures.d_values must not be empty".into());
        }
        if self.figures.d_values_fig2.is_empty() {
            errors.push("figures.d_values_fig2 must not be empty".into());
        }
        if self.figures.y_values.is_empty() {
            errors.push("figures.y_values must not be empty".into());
        }
        for list in [
            &self.figures.d_values,
            &self.figures.d_values_fig2,
            &self.figures.y_values,
        ] {
            for v in list {
                if !v.is_finite() {
                    errors.push(format!("figure parameter {v} is not finite"));
                }
            }
        }
        if self.drive.thermal_forces.is_empty() {
            errors.push("drive.thermal_forces must not be empty".into());
        }
        for f in &self.drive.thermal_forces {
            if !f.is_finite() || *f == 0.0 {
                errors.push(format!(
                    "drive.thermal_forces entry {f} must be finite and nonzero"
                ));
            }
        }
        if !(self.drive.load_ratio > 0.0 && self.drive.load_ratio < 2.0) {
            errors.push(format!(
                "drive.load_ratio must lie in (0, 2), got {}",
                self.drive.load_ratio
            ));
        }
        if !(self.quadrature.abs_tol > 0.0) {
            errors.push(format!(
                "quadrature.abs_tol must be positive, got {}",
                self.quadrature.abs_tol
            ));
        }
        if !(self.quadrature.window_widths > 0.0) {
            errors.push(format!(
                "quadrature.window_widths must be positive, got {}",
                self.quadrature.window_widths
            ));
        }
        if !(self.drive.bias_warning_threshold > 0.0) {
            errors.push(format!(
                "drive.bias_warning_threshold must be positive, got {}",
                self.drive.bias_warning_threshold
            ));
        }
        if !(self.output.tolerance > 0.0) {
            errors.push(format!(
                "output.tolerance must be positive, got {}",
                self.output.tolerance
            ));
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(ConfigError { problems: errors })
        }
    }

    /// Stable digest of the data-affecting configuration, for provenance.
    /// Worker count, output path and serialization format are operational
    /// knobs and do not enter: identical physics gives identical bytes.
    pub fn digest(&self) -> String {
        use std::hash::{Hash, Hasher};
        #[derive(Serialize)]
        struct DataConfig<'a> {
            model: &'a ModelConfig,
            grid: &'a GridConfig,
            figures: &'a FigureConfig,
            drive: &'a DriveConfig,
            quadrature: &'a QuadratureConfig,
            branch: BranchChoice,
            tolerance: f64,
        }
        let data = DataConfig {
            model: &self.model,
            grid: &self.grid,
            figures: &self.figures,
            drive: &self.drive,
            quadrature: &self.quadrature,
            branch: self.output.branch,
            tolerance: self.output.tolerance,
        };
        let canonical = serde_json::to_string(&data).expect("config serializes");
        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        canonical.hash(&mut hasher);
        format!("{:016x}", hasher.finish())
    }

    /// The number of worker threads to use, honoring the environment
    /// override when the config does not pin one.
    pub fn resolved_workers(&self) -> usize {
        if self.output.workers > 0 {
            return self.output.workers;
        }
        if let Ok(value) = std::env::var("PROBE_ENGINE_WORKERS") {
            if let Ok(n) = value.trim().parse::<usize>() {
                if n > 0 {
                    return n;
                }
            }
        }
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        SweepConfig::default().validate().unwrap();
    }

    #[test]
    fn grid_values_hit_both_endpoints() {
        let g = GridSpec::new(-1.0, 1.0, 5);
        let v = g.values();
        assert_eq!(v.len(), 5);
        assert_eq!(v[0], -1.0);
        assert_eq!(v[4], 1.0);
        assert!((v[2] - 0.0).abs() < 1e-15);
    }

    #[test]
    fn toml_round_trip_and_overrides() {
        let text = r#"
            [model]
            hopping = 2.0

            [grid.phi]
            min = 0.1
            max = 3.0
            count = 10

            [output]
            format = "json"
            workers = 3
        "#;
        let c = SweepConfig::from_toml(text).unwrap();
        assert_eq!(c.model.hopping, 2.0);
        assert_eq!(c.grid.phi.count, 10);
        assert_eq!(c.output.format, OutputFormat::Json);
        assert_eq!(c.resolved_workers(), 3);
        // Untouched sections keep their defaults.
        assert_eq!(c.figures.y_values, FigureConfig::default().y_values);
    }

    #[test]
    fn validation_reports_each_offending_field() {
        let mut c = SweepConfig::default();
        c.grid.load = GridSpec::new(0.0, 2.5, 1);
        c.drive.thermal_forces = vec![0.0];
        c.model.couplings = [0.0, 0.5, 0.5];
        let err = c.validate().unwrap_err();
        let text = err.to_string();
        assert!(text.contains("grid.load"), "{text}");
        assert!(text.contains("thermal_forces"), "{text}");
        assert!(text.contains("model:"), "{text}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = SweepConfig::from_toml("[grid]\nbogus = 1\n").unwrap_err();
        assert!(err.to_string().contains("parse error"));
    }

    #[test]
    fn digest_is_stable_and_sensitive() {
        let a = SweepConfig::default();
        let b = SweepConfig::default();
        assert_eq!(a.digest(), b.digest());
        let mut c = SweepConfig::default();
        c.model.hopping = 1.5;
        assert_ne!(a.digest(), c.digest());
    }
}
