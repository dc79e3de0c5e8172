//! Per-flux-point transport pipeline shared by figures, sweeps and reports.

use probe_engine::{
    assemble_onsager4, reduce_buttiker, reduce_voltage_probe, ButtikerCoefficients, DotRingModel,
    FieldSign, Onsager2, Onsager3, Onsager4, QuadratureSettings, Result, TransportCoefficients,
};

use crate::config::ModelConfig;

/// Everything derivable from one flux phase: matrices at both field signs,
/// their reductions and the transport coefficients.
#[derive(Debug, Clone)]
pub struct FluxPoint {
    pub model: DotRingModel,
    pub l4: Onsager4,
    pub l4_rev: Onsager4,
    pub l3: Onsager3,
    pub l3_rev: Onsager3,
    pub l2: Onsager2,
    pub l2_rev: Onsager2,
    pub coefficients: TransportCoefficients,
    pub buttiker: ButtikerCoefficients,
}

impl FluxPoint {
    pub fn evaluate(
        model_config: &ModelConfig,
        flux_phase: f64,
        temperature: f64,
        chemical_potential: f64,
        settings: &QuadratureSettings,
    ) -> Result<FluxPoint> {
        let model = model_config.model_at_flux(flux_phase);
        let l4 = assemble_onsager4(
            &model,
            temperature,
            chemical_potential,
            FieldSign::Plus,
            settings,
        )?;
        let l4_rev = assemble_onsager4(
            &model.reversed_field(),
            temperature,
            chemical_potential,
            FieldSign::Minus,
            settings,
        )?;
        let l3 = reduce_voltage_probe(&l4)?;
        let l3_rev = reduce_voltage_probe(&l4_rev)?;
        let l2 = reduce_buttiker(&l3)?;
        let l2_rev = reduce_buttiker(&l3_rev)?;
        let coefficients = TransportCoefficients::from_voltage_probe(&l3, &l3_rev, temperature)?;
        let buttiker = ButtikerCoefficients::from_buttiker(&l2, &l2_rev, temperature)?;
        Ok(FluxPoint {
            model,
            l4,
            l4_rev,
            l3,
            l3_rev,
            l2,
            l2_rev,
            coefficients,
            buttiker,
        })
    }
}

/// Reduced units of the harness: the reference reservoir sets the scales.
pub const TEMPERATURE: f64 = 1.0;
pub const CHEMICAL_POTENTIAL: f64 = 0.0;
