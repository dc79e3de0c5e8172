//! Point reports: matrix dumps and the invariant checklist.

use std::fmt::Write as _;

use probe_engine::{
    check_bounds, check_bounds_buttiker, probe_temperature_elimination, probe_voltage_elimination,
    sum_rule_residual, Error, TransmissionSet,
};

use crate::config::SweepConfig;
use crate::dataset::format_f64;
use crate::pipeline::{FluxPoint, CHEMICAL_POTENTIAL, TEMPERATURE};

fn matrix_block<const N: usize>(out: &mut String, title: &str, entries: &[[f64; N]; N]) {
    let _ = writeln!(out, "{title}");
    for row in entries {
        let cells: Vec<String> = row.iter().map(|v| format_f64(*v)).collect();
        let _ = writeln!(out, "  {}", cells.join("  "));
    }
}

/// Print the full, voltage-probe and Buttiker matrices at both field signs.
pub fn onsager_dump(config: &SweepConfig, phi: f64) -> Result<String, Error> {
    let settings = config.quadrature.settings();
    let point = FluxPoint::evaluate(
        &config.model,
        phi,
        TEMPERATURE,
        CHEMICAL_POTENTIAL,
        &settings,
    )?;
    let mut out = String::new();
    let _ = writeln!(out, "flux phase: {}", format_f64(phi));
    let _ = writeln!(out, "model: {:?}", point.model);
    matrix_block(
        &mut out,
        "L (4x4, +B) over (X_L^V, X_L^T, X_P^V, X_P^T):",
        &point.l4.entries,
    );
    matrix_block(&mut out, "L (4x4, -B):", &point.l4_rev.entries);
    matrix_block(
        &mut out,
        "L' (3x3, +B) over (X_L^V, X_L^T, X_P^T):",
        &point.l3.entries,
    );
    matrix_block(&mut out, "L' (3x3, -B):", &point.l3_rev.entries);
    matrix_block(
        &mut out,
        "L'' (2x2, +B) over (X_L^V, X_L^T):",
        &point.l2.entries,
    );
    matrix_block(&mut out, "L'' (2x2, -B):", &point.l2_rev.entries);
    Ok(out)
}

pub struct CheckOutcome {
    pub report: String,
    pub all_pass: bool,
}

struct Checklist {
    report: String,
    all_pass: bool,
}

impl Checklist {
    fn new() -> Self {
        Self {
            report: String::new(),
            all_pass: true,
        }
    }

    fn item(&mut self, name: &str, residual: f64, limit: f64) {
        let pass = residual <= limit;
        self.all_pass &= pass;
        let _ = writeln!(
            self.report,
            "check {name}: {} (residual {residual:.3e}, limit {limit:.1e})",
            if pass { "PASS" } else { "FAIL" }
        );
    }

    fn flag(&mut self, name: &str, pass: bool, detail: &str) {
        self.all_pass &= pass;
        let _ = writeln!(
            self.report,
            "check {name}: {} ({detail})",
            if pass { "PASS" } else { "FAIL" }
        );
    }
}

/// Deterministic low-discrepancy force samples in [-scale, scale]^n.
fn force_samples(count: usize, scale: f64) -> Vec<[f64; 4]> {
    let mut state = 0x9e3779b97f4a7c15_u64;
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 * scale - scale
    };
    (0..count)
        .map(|_| [next(), next(), next(), next()])
        .collect()
}

/// Run the invariant suite at one (phi, delta) point.
pub fn run_check(config: &SweepConfig, phi: f64, delta: f64) -> Result<CheckOutcome, Error> {
    let settings = config.quadrature.settings();
    let point = FluxPoint::evaluate(
        &config.model,
        phi,
        TEMPERATURE,
        CHEMICAL_POTENTIAL,
        &settings,
    )?;
    let mut list = Checklist::new();
    let _ = writeln!(
        list.report,
        "invariant suite at phi = {phi}, delta = {delta}"
    );

    // Transmission-level invariants.
    let set = TransmissionSet::new(point.model, point.model.reversed_field());
    let mut sum_rule = 0.0_f64;
    let mut reciprocity = 0.0_f64;
    let mut bounded = true;
    for i in 0..41 {
        let e = -6.0 + 12.0 * i as f64 / 40.0;
        sum_rule = sum_rule.max(sum_rule_residual(&point.model, e));
        reciprocity = reciprocity.max(set.reciprocity_residual(e));
        let t = point.model.transmission_matrix(e)?;
        for a in 0..3 {
            for b in 0..3 {
                bounded &= t[a][b] >= 0.0 && t[a][b] <= 1.0 + 1e-12;
            }
        }
    }
    list.item("transmission sum rule", sum_rule, 1e-10);
    list.item("field-reversal reciprocity", reciprocity, 1e-12);
    list.flag("single-channel range", bounded, "0 <= T_ab <= 1");

    // Matrix-level invariants.
    list.item(
        "Onsager-Casimir (4x4)",
        point.l4.casimir_residual(&point.l4_rev),
        1e-9,
    );
    list.item(
        "Onsager-Casimir (3x3)",
        point.l3.casimir_residual(&point.l3_rev),
        1e-9,
    );
    list.item(
        "Onsager-Casimir (2x2)",
        point.l2.casimir_residual(&point.l2_rev),
        1e-9,
    );
    list.flag(
        "diagonal positivity",
        point.l4.min_diagonal() >= 0.0
            && point.l3.min_diagonal() >= 0.0
            && point.l2.min_diagonal() >= 0.0,
        "all ranks",
    );

    let mut second_law = f64::INFINITY;
    for f in force_samples(100, 0.05) {
        second_law = second_law.min(point.l4.entropy_production(f));
    }
    list.flag(
        "second law",
        second_law >= -1e-12,
        &format!("min entropy production {second_law:.3e}"),
    );

    // Elimination consistency.
    let vp = probe_voltage_elimination(&point.l4)?;
    let bt = probe_temperature_elimination(&point.l3)?;
    let mut reduction = 0.0_f64;
    for f in force_samples(50, 0.02) {
        let [x_lv, x_lt, x_pt, _] = f;
        let x_pv = vp.probe_voltage(x_lv, x_lt, x_pt);
        let full = point.l4.apply([x_lv, x_lt, x_pv, x_pt]);
        let reduced = point.l3.apply([x_lv, x_lt, x_pt]);
        reduction = reduction
            .max(full[2].abs())
            .max((full[0] - reduced[0]).abs())
            .max((full[1] - reduced[1]).abs())
            .max((full[3] - reduced[2]).abs());
        let x_pt_star = bt.probe_temperature(x_lv, x_lt);
        let blocked = point.l3.apply([x_lv, x_lt, x_pt_star]);
        let two = point.l2.apply([x_lv, x_lt]);
        reduction = reduction
            .max(blocked[2].abs())
            .max((blocked[0] - two[0]).abs())
            .max((blocked[1] - two[1]).abs());
    }
    list.item("probe eliminations commute with currents", reduction, 1e-12);

    // Coefficient-level invariants.
    let c = &point.coefficients;
    list.item(
        "Peltier-Seebeck relation",
        (c.peltier_local - TEMPERATURE * c.seebeck_local_rev)
            .abs()
            .max((c.peltier_probe - TEMPERATURE * c.seebeck_nonlocal_rev).abs()),
        1e-9,
    );
    list.flag(
        "thermal conductance positivity",
        c.thermal_ll > 0.0 && c.thermal_pp > 0.0,
        &format!("K_LL {:.3e}, K_PP {:.3e}", c.thermal_ll, c.thermal_pp),
    );

    // Bound inequalities at the requested bias ratio and in the Buttiker limit.
    let tolerance = config.output.tolerance;
    let report = check_bounds(&point.l3, 1.0 / delta, tolerance);
    list.flag(
        "current-conservation bounds (voltage probe)",
        report.all_pass(),
        &format!("residuals {:?}", report.residuals),
    );
    let report = check_bounds_buttiker(&point.l2, tolerance);
    list.flag(
        "current-conservation bounds (Buttiker)",
        report.all_pass(),
        &format!("residuals {:?}", report.residuals),
    );

    let _ = writeln!(
        list.report,
        "result: {}",
        if list.all_pass {
            "ALL PASS"
        } else {
            "FAILURES PRESENT"
        }
    );
    Ok(CheckOutcome {
        report: list.report,
        all_pass: list.all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_passes_at_a_generic_point() {
        let config = SweepConfig::default();
        let outcome = run_check(&config, std::f64::consts::FRAC_PI_3, 0.8).unwrap();
        assert!(outcome.all_pass, "{}", outcome.report);
        assert!(outcome.report.contains("Onsager-Casimir"));
    }

    #[test]
    fn dump_prints_all_three_ranks() {
        let config = SweepConfig::default();
        let text = onsager_dump(&config, 1.0).unwrap();
        assert!(text.contains("L (4x4, +B)"));
        assert!(text.contains("L' (3x3, -B)"));
        assert!(text.contains("L'' (2x2, +B)"));
        // 17-significant-digit entries.
        assert!(text.contains("e0") || text.contains("e-"));
    }
}
