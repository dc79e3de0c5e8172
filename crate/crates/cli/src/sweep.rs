//! Parameter sweep over (phi, delta, thermal force): regimes, merit
//! parameters, maximum-power efficiency and bound residuals per grid point.

use rayon::prelude::*;

use probe_engine::{
    bound_functions, check_bounds, max_power, merit_set, performance_point, EngineDrive,
    PerformancePoint, RegimeClass,
};

use crate::config::SweepConfig;
use crate::dataset::{standard_metadata, Cell, Column, Dataset};
use crate::pipeline::{FluxPoint, CHEMICAL_POTENTIAL, TEMPERATURE};

const COLUMNS: &[(&str, &str)] = &[
    ("phi", "rad"),
    ("delta", "1"),
    ("thermal_force", "1/(kB T)"),
    ("status", "text"),
    ("regime", "text"),
    ("power_max", "(kB T)^2/h"),
    ("x_m", "1"),
    ("y_m", "1"),
    ("d_m", "1"),
    ("eta_max_power", "1"),
    ("carnot_max_power", "1"),
    ("bound_r1", "1"),
    ("bound_r2", "1"),
    ("bound_r3", "1"),
    ("bounds_pass", "text"),
    ("H_m", "1"),
    ("orientation_ok", "text"),
];

fn empty_tail(row: &mut Vec<Cell>) {
    while row.len() < COLUMNS.len() {
        row.push(Cell::Empty);
    }
}

fn point_row(
    config: &SweepConfig,
    flux: &FluxPoint,
    phi: f64,
    delta: f64,
    thermal_force: f64,
) -> Vec<Cell> {
    let mut row = vec![Cell::Num(phi), Cell::Num(delta), Cell::Num(thermal_force)];
    let tolerance = config.output.tolerance;
    let xi = 1.0 / delta;
    let probe_thermal_force = thermal_force * xi;

    let report = check_bounds(&flux.l3, xi, tolerance);

    let peak = match max_power(&flux.l3, thermal_force, probe_thermal_force, TEMPERATURE) {
        Ok(p) => p,
        Err(e) => {
            row.push(Cell::Text(format!("error: {e}")));
            empty_tail(&mut row);
            return row;
        }
    };
    let drive = EngineDrive {
        load_force: config.drive.load_ratio * peak.optimal_load_force,
        thermal_force,
        probe_thermal_force,
    };
    let point: PerformancePoint =
        match performance_point(&flux.l4, &drive, TEMPERATURE, CHEMICAL_POTENTIAL) {
            Ok(p) => p,
            Err(e) => {
                row.push(Cell::Text(format!("error: {e}")));
                empty_tail(&mut row);
                return row;
            }
        };

    row.push(Cell::Text("ok".into()));
    row.push(Cell::Text(point.regime.label().into()));
    row.push(Cell::finite(point.max_power));

    let engine = match point.regime {
        RegimeClass::Engine(m) if point.power > 0.0 => Some(m),
        _ => None,
    };
    match engine.map(|m| merit_set(&flux.coefficients, delta, TEMPERATURE, m)) {
        Some(Ok(merit)) => {
            row.push(Cell::finite(merit.asymmetry));
            row.push(Cell::finite(merit.figure_of_merit));
            row.push(Cell::finite(merit.characteristic));
            row.push(
                point
                    .efficiency_at_max_power
                    .map_or(Cell::Empty, Cell::finite),
            );
            row.push(point.carnot_at_max_power.map_or(Cell::Empty, Cell::finite));
            row.push(Cell::Num(report.residuals[0]));
            row.push(Cell::Num(report.residuals[1]));
            row.push(Cell::Num(report.residuals[2]));
            row.push(Cell::Text(if report.all_pass() {
                "pass".into()
            } else {
                "fail".into()
            }));
            match bound_functions(merit.asymmetry, merit.characteristic) {
                Ok(bounds) => {
                    row.push(Cell::finite(bounds.voltage_probe));
                    let ok = bounds.admits(merit.figure_of_merit, tolerance);
                    row.push(Cell::Text(if ok { "pass".into() } else { "fail".into() }));
                }
                Err(_) => {
                    // x_m = 1: the bound has a pole and constrains nothing.
                    row.push(Cell::Empty);
                    row.push(Cell::Text("pole".into()));
                }
            }
        }
        Some(Err(e)) => {
            row[3] = Cell::Text(format!("error: {e}"));
            empty_tail(&mut row);
        }
        None => {
            // Not an engine point: only the bound residuals apply.
            for _ in 0..5 {
                row.push(Cell::Empty);
            }
            row.push(Cell::Num(report.residuals[0]));
            row.push(Cell::Num(report.residuals[1]));
            row.push(Cell::Num(report.residuals[2]));
            row.push(Cell::Text(if report.all_pass() {
                "pass".into()
            } else {
                "fail".into()
            }));
            row.push(Cell::Empty);
            row.push(Cell::Empty);
        }
    }
    row
}

/// Evaluate the full grid. Per-point failures are recorded in the status
/// column; only configuration-level problems abort.
pub fn run_sweep(config: &SweepConfig) -> Dataset {
    let phis = config.grid.phi.values();
    let deltas = config.grid.delta.values();
    let forces = &config.drive.thermal_forces;
    let settings = config.quadrature.settings();

    let columns = COLUMNS
        .iter()
        .map(|(name, unit)| Column::new(*name, *unit))
        .collect();
    let mut dataset = Dataset::new("sweep", columns);
    standard_metadata(&mut dataset, &config.digest());
    dataset.meta("model", format!("{:?}", config.model));
    dataset.meta("load-ratio", format!("{}", config.drive.load_ratio));
    dataset.meta(
        "grid",
        format!(
            "phi {}x delta {}x force {}",
            phis.len(),
            deltas.len(),
            forces.len()
        ),
    );

    let groups: Vec<Vec<Vec<Cell>>> = phis
        .par_iter()
        .map(|&phi| {
            match FluxPoint::evaluate(
                &config.model,
                phi,
                TEMPERATURE,
                CHEMICAL_POTENTIAL,
                &settings,
            ) {
                Ok(flux) => {
                    let mut rows = Vec::with_capacity(deltas.len() * forces.len());
                    for &delta in &deltas {
                        for &force in forces {
                            rows.push(point_row(config, &flux, phi, delta, force));
                        }
                    }
                    rows
                }
                Err(e) => {
                    let status = format!("error: {e}");
                    deltas
                        .iter()
                        .flat_map(|&delta| {
                            let status = &status;
                            forces.iter().map(move |&force| {
                                let mut row =
                                    vec![Cell::Num(phi), Cell::Num(delta), Cell::Num(force)];
                                row.push(Cell::Text(status.clone()));
                                empty_tail(&mut row);
                                row
                            })
                        })
                        .collect()
                }
            }
        })
        .collect();
    for group in groups {
        for row in group {
            dataset.push_row(row);
        }
    }
    dataset
}
