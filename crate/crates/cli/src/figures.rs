//! Figure datasets: bound functions, normalized efficiencies, the efficiency
//! bound surface, and the characteristic-parameter contours of the dot ring.

use clap::ValueEnum;
use rayon::prelude::*;

use probe_engine::{
    bound_functions, characteristic_parameter, efficiency_bound, load_ratio, normalized_efficiency,
    normalized_efficiency_buttiker, Branch, EngineRegime, Error,
};

use crate::config::SweepConfig;
use crate::dataset::{standard_metadata, Cell, Column, Dataset, Exclusion};
use crate::pipeline::{FluxPoint, CHEMICAL_POTENTIAL, TEMPERATURE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    /// Bound functions H_m(x_m) for several characteristic parameters.
    Fig2,
    /// Normalized efficiency against the load ratio.
    Fig3,
    /// Normalized efficiency against the power gain.
    Fig4,
    /// Efficiency bound over (asymmetry, power gain), both branches.
    Fig5,
    /// Characteristic-parameter contours of the dot ring over (phi, delta).
    Fig6,
}

impl FigureId {
    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
        }
    }
}

pub fn run_figure(id: FigureId, config: &SweepConfig) -> Result<Dataset, Error> {
    match id {
        FigureId::Fig2 => Ok(bound_function_curves(config)),
        FigureId::Fig3 => Ok(normalized_efficiency_vs_load(config)),
        FigureId::Fig4 => Ok(normalized_efficiency_vs_gain(config)),
        FigureId::Fig5 => Ok(efficiency_bound_surface(config)),
        FigureId::Fig6 => characteristic_contours(config),
    }
}

fn label(value: f64) -> String {
    format!("{value}")
}

/// H_m(x_m) for each configured d, plus the d = 1 reference H(x).
fn bound_function_curves(config: &SweepConfig) -> Dataset {
    let xs = config.grid.asymmetry.values();
    let ds = &config.figures.d_values_fig2;
    let mut columns = vec![Column::new("x_m", "1")];
    for d in ds {
        columns.push(Column::new(format!("H_m[d={}]", label(*d)), "1"));
    }
    columns.push(Column::new("H", "1"));

    let mut dataset = Dataset::new("fig2", columns);
    standard_metadata(&mut dataset, &config.digest());
    dataset.meta("d-values", format!("{ds:?}"));

    let rows: Vec<Vec<Cell>> = xs
        .par_iter()
        .map(|&x| {
            let mut row = Vec::with_capacity(ds.len() + 2);
            row.push(Cell::Num(x));
            match bound_functions(x, 1.0) {
                Ok(b) => {
                    for &d in ds {
                        row.push(Cell::finite(d * b.buttiker));
                    }
                    row.push(Cell::finite(b.buttiker));
                }
                Err(_) => {
                    // Exact pole hit at x = 1.
                    for _ in 0..=ds.len() {
                        row.push(Cell::Empty);
                    }
                }
            }
            row
        })
        .collect();
    for row in rows {
        dataset.push_row(row);
    }

    if xs.contains(&1.0) {
        let below = xs
            .iter()
            .copied()
            .filter(|&x| x < 1.0)
            .fold(f64::NEG_INFINITY, f64::max);
        let above = xs
            .iter()
            .copied()
            .filter(|&x| x > 1.0)
            .fold(f64::INFINITY, f64::min);
        for d in ds {
            dataset.exclude(Exclusion {
                column: format!("H_m[d={}]", label(*d)),
                axis: "x_m".into(),
                lo: below,
                hi: above,
                reason: "pole at x_m = 1".into(),
            });
        }
        dataset.exclude(Exclusion {
            column: "H".into(),
            axis: "x_m".into(),
            lo: below,
            hi: above,
            reason: "pole at x_m = 1".into(),
        });
    }
    dataset
}

/// One normalized-efficiency series over a grid, with pole intervals detected
/// by denominator sign changes and masked out.
fn efficiency_series(
    axis: &[f64],
    denominator: impl Fn(f64) -> f64,
    value: impl Fn(f64) -> Result<f64, Error>,
) -> (Vec<Cell>, Vec<(f64, f64)>) {
    let dens: Vec<f64> = axis.iter().map(|&a| denominator(a)).collect();
    let mut cells: Vec<Cell> = axis
        .iter()
        .map(|&a| match value(a) {
            Ok(v) => Cell::finite(v),
            Err(_) => Cell::Empty,
        })
        .collect();
    let mut gaps = Vec::new();
    for i in 0..axis.len() {
        if dens[i] == 0.0 {
            // Pole hit exactly on a grid point.
            cells[i] = Cell::Empty;
            let lo = if i > 0 { axis[i - 1] } else { axis[i] };
            let hi = if i + 1 < axis.len() {
                axis[i + 1]
            } else {
                axis[i]
            };
            gaps.push((lo, hi));
        }
    }
    for i in 1..axis.len() {
        if dens[i - 1] * dens[i] < 0.0 {
            cells[i - 1] = Cell::Empty;
            cells[i] = Cell::Empty;
            gaps.push((axis[i - 1], axis[i]));
        }
    }
    (cells, gaps)
}

/// eta/eta(P_max) against the load ratio for the Buttiker engine and for the
/// voltage-probe engine at each configured (d, y), plus the power parabola.
fn normalized_efficiency_vs_load(config: &SweepConfig) -> Dataset {
    let eps = config.grid.load.values();
    let ys = &config.figures.y_values;
    let ds = &config.figures.d_values;

    let mut columns = vec![Column::new("eps", "1"), Column::new("P/Pmax", "1")];
    for y in ys {
        columns.push(Column::new(format!("btk[y={}]", label(*y)), "1"));
    }
    for d in ds {
        for y in ys {
            columns.push(Column::new(
                format!("vp[d={},y={}]", label(*d), label(*y)),
                "1",
            ));
        }
    }

    let mut dataset = Dataset::new("fig3", columns);
    standard_metadata(&mut dataset, &config.digest());
    dataset.meta("y-values", format!("{ys:?}"));
    dataset.meta("d-values", format!("{ds:?}"));

    // Column-major evaluation so each series can carry its own gaps.
    let mut series: Vec<(String, Vec<Cell>, Vec<(f64, f64)>)> = Vec::new();
    for &y in ys {
        let (cells, gaps) = efficiency_series(
            &eps,
            |e| (y + 2.0) + y * (1.0 - e),
            |e| normalized_efficiency_buttiker(e, y),
        );
        series.push((format!("btk[y={}]", label(y)), cells, gaps));
    }
    for &d in ds {
        for &y in ys {
            let (cells, gaps) = efficiency_series(
                &eps,
                |e| (y + 2.0 * d) + y * (1.0 - e),
                |e| normalized_efficiency(e, y, d),
            );
            series.push((format!("vp[d={},y={}]", label(d), label(y)), cells, gaps));
        }
    }

    for (i, &e) in eps.iter().enumerate() {
        let mut row = vec![Cell::Num(e), Cell::Num(e * (2.0 - e))];
        for (_, cells, _) in &series {
            row.push(cells[i].clone());
        }
        dataset.push_row(row);
    }
    for (name, _, gaps) in &series {
        for &(lo, hi) in gaps {
            dataset.exclude(Exclusion {
                column: name.clone(),
                axis: "eps".into(),
                lo,
                hi,
                reason: "denominator sign change".into(),
            });
        }
    }
    dataset
}

/// The same normalized efficiencies as functions of the power gain, on the
/// configured branch.
fn normalized_efficiency_vs_gain(config: &SweepConfig) -> Dataset {
    let gains = config.grid.power_gain.values();
    let ys = &config.figures.y_values;
    let ds = &config.figures.d_values;
    let branch = config.output.branch.branch();

    let mut columns = vec![Column::new("delta_P", "1"), Column::new("P/Pmax", "1")];
    for y in ys {
        columns.push(Column::new(format!("btk[y={}]", label(*y)), "1"));
    }
    for d in ds {
        for y in ys {
            columns.push(Column::new(
                format!("vp[d={},y={}]", label(*d), label(*y)),
                "1",
            ));
        }
    }

    let mut dataset = Dataset::new("fig4", columns);
    standard_metadata(&mut dataset, &config.digest());
    dataset.meta("branch", branch.label().to_string());
    dataset.meta("y-values", format!("{ys:?}"));
    dataset.meta("d-values", format!("{ds:?}"));

    let load_of = |gain: f64| load_ratio(gain, branch).expect("grid validated to [-1, 0]");
    let mut series: Vec<(String, Vec<Cell>, Vec<(f64, f64)>)> = Vec::new();
    for &y in ys {
        let (cells, gaps) = efficiency_series(
            &gains,
            |g| (y + 2.0) + y * (1.0 - load_of(g)),
            |g| normalized_efficiency_buttiker(load_of(g), y),
        );
        series.push((format!("btk[y={}]", label(y)), cells, gaps));
    }
    for &d in ds {
        for &y in ys {
            let (cells, gaps) = efficiency_series(
                &gains,
                |g| (y + 2.0 * d) + y * (1.0 - load_of(g)),
                |g| normalized_efficiency(load_of(g), y, d),
            );
            series.push((format!("vp[d={},y={}]", label(d), label(y)), cells, gaps));
        }
    }

    for (i, &g) in gains.iter().enumerate() {
        let mut row = vec![Cell::Num(g), Cell::Num(1.0 + g)];
        for (_, cells, _) in &series {
            row.push(cells[i].clone());
        }
        dataset.push_row(row);
    }
    for (name, _, gaps) in &series {
        for &(lo, hi) in gaps {
            dataset.exclude(Exclusion {
                column: name.clone(),
                axis: "delta_P".into(),
                lo,
                hi,
                reason: "denominator sign change".into(),
            });
        }
    }
    dataset
}

/// eta_bound / eta_c over the (x_m, delta_P) plane for both branches.
fn efficiency_bound_surface(config: &SweepConfig) -> Dataset {
    let xs = config.grid.asymmetry.values();
    let gains = config.grid.power_gain.values();
    let columns = vec![
        Column::new("x_m", "1"),
        Column::new("delta_P", "1"),
        Column::new("bound_plus", "eta_c,m"),
        Column::new("bound_minus", "eta_c,m"),
    ];
    let mut dataset = Dataset::new("fig5", columns);
    standard_metadata(&mut dataset, &config.digest());
    dataset.meta("ca-level", "0.5 (eta_c,m/2 at x_m = 1, delta_P = 0)");

    let rows: Vec<Vec<Vec<Cell>>> = xs
        .par_iter()
        .map(|&x| {
            gains
                .iter()
                .map(|&g| {
                    let plus = efficiency_bound(x, g, Branch::Plus, 1.0);
                    let minus = efficiency_bound(x, g, Branch::Minus, 1.0);
                    vec![
                        Cell::Num(x),
                        Cell::Num(g),
                        plus.map_or(Cell::Empty, Cell::finite),
                        minus.map_or(Cell::Empty, Cell::finite),
                    ]
                })
                .collect()
        })
        .collect();
    let mut removable_corner = false;
    for group in rows {
        for row in group {
            if row[2] == Cell::Empty || row[3] == Cell::Empty {
                removable_corner = true;
            }
            dataset.push_row(row);
        }
    }
    if removable_corner {
        dataset.exclude(Exclusion {
            column: "bound_plus".into(),
            axis: "x_m".into(),
            lo: 1.0,
            hi: 1.0,
            reason: "0/0 at (x_m, delta_P) = (1, -1) on the plus branch".into(),
        });
    }
    dataset
}

/// d_L, d_P, d_LP of the dot ring over the (phi, delta) grid.
fn characteristic_contours(config: &SweepConfig) -> Result<Dataset, Error> {
    let phis = config.grid.phi.values();
    let deltas = config.grid.delta.values();
    let settings = config.quadrature.settings();

    let columns = vec![
        Column::new("phi", "rad"),
        Column::new("delta", "1"),
        Column::new("d_L", "1"),
        Column::new("d_P", "1"),
        Column::new("d_LP", "1"),
    ];
    let mut dataset = Dataset::new("fig6", columns);
    standard_metadata(&mut dataset, &config.digest());
    dataset.meta("model", format!("{:?}", config.model));

    let groups: Vec<Result<Vec<Vec<Cell>>, Error>> = phis
        .par_iter()
        .map(|&phi| {
            let point = FluxPoint::evaluate(
                &config.model,
                phi,
                TEMPERATURE,
                CHEMICAL_POTENTIAL,
                &settings,
            )?;
            Ok(deltas
                .iter()
                .map(|&delta| {
                    let d_l = characteristic_parameter(
                        &point.coefficients,
                        delta,
                        EngineRegime::HeatFromLeft,
                    );
                    let d_p = characteristic_parameter(
                        &point.coefficients,
                        delta,
                        EngineRegime::HeatFromProbe,
                    );
                    let d_lp = characteristic_parameter(
                        &point.coefficients,
                        delta,
                        EngineRegime::HeatFromBoth,
                    );
                    vec![
                        Cell::Num(phi),
                        Cell::Num(delta),
                        Cell::finite(d_l),
                        Cell::finite(d_p),
                        Cell::finite(d_lp),
                    ]
                })
                .collect())
        })
        .collect();
    for group in groups {
        for row in group? {
            dataset.push_row(row);
        }
    }
    Ok(dataset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::GridSpec;

    fn small_config() -> SweepConfig {
        let mut c = SweepConfig::default();
        c.grid.asymmetry = GridSpec::new(-3.0, 3.0, 25);
        c.grid.load = GridSpec::new(0.05, 1.95, 39);
        c.grid.power_gain = GridSpec::new(-1.0, 0.0, 21);
        c.grid.phi = GridSpec::new(0.3, 5.9, 6);
        c.grid.delta = GridSpec::new(0.1, 1.9, 5);
        c
    }

    #[test]
    fn fig2_exact_pole_becomes_gap() {
        let mut c = small_config();
        c.grid.asymmetry = GridSpec::new(0.0, 2.0, 3); // hits x = 1 exactly
        let d = run_figure(FigureId::Fig2, &c).unwrap();
        assert!(d.all_rows_finite_or_excluded());
        assert!(!d.exclusions.is_empty());
        // The x = 1 row has empty H cells.
        let row = &d.rows[1];
        assert_eq!(row[0], Cell::Num(1.0));
        assert!(row[1..].iter().all(|c| *c == Cell::Empty));
    }

    #[test]
    fn fig3_unit_characteristic_column_matches_buttiker_column() {
        let c = small_config();
        let d = run_figure(FigureId::Fig3, &c).unwrap();
        let names: Vec<&str> = d.columns.iter().map(|c| c.name.as_str()).collect();
        for &y in &c.figures.y_values {
            let btk = names
                .iter()
                .position(|n| *n == format!("btk[y={y}]"))
                .unwrap();
            let vp = names
                .iter()
                .position(|n| *n == format!("vp[d=1,y={y}]"))
                .unwrap();
            for row in &d.rows {
                assert_eq!(
                    row[btk], row[vp],
                    "d = 1 must reproduce the Buttiker series"
                );
            }
        }
    }

    #[test]
    fn fig3_negative_characteristic_produces_gap_markers() {
        let mut c = small_config();
        c.figures.d_values = vec![-0.4];
        c.figures.y_values = vec![1.0];
        // Pole of the d = -0.4, y = 1 series sits at eps = 2(y+d)/y = 1.2.
        let d = run_figure(FigureId::Fig3, &c).unwrap();
        assert!(d.all_rows_finite_or_excluded());
        assert!(
            d.exclusions
                .iter()
                .any(|e| e.column == "vp[d=-0.4,y=1]" && e.lo < 1.2 && e.hi > 1.2),
            "expected a gap around the pole: {:?}",
            d.exclusions
        );
    }

    #[test]
    fn fig5_reference_point_is_half_carnot() {
        let mut c = small_config();
        c.grid.asymmetry = GridSpec::new(-2.0, 2.0, 5); // includes x = 1
        c.grid.power_gain = GridSpec::new(-1.0, 0.0, 5); // includes dP = 0
        let d = run_figure(FigureId::Fig5, &c).unwrap();
        let hit = d
            .rows
            .iter()
            .find(|r| r[0] == Cell::Num(1.0) && r[1] == Cell::Num(0.0))
            .expect("grid point (1, 0)");
        assert_eq!(hit[2], Cell::Num(0.5));
        assert_eq!(hit[3], Cell::Num(0.5));
        // The removable 0/0 corner is masked, not emitted as NaN.
        assert!(d.all_rows_finite_or_excluded());
        let corner = d
            .rows
            .iter()
            .find(|r| r[0] == Cell::Num(1.0) && r[1] == Cell::Num(-1.0))
            .unwrap();
        assert_eq!(corner[2], Cell::Empty);
    }

    #[test]
    fn fig6_sign_pattern_holds_on_a_coarse_grid() {
        let c = small_config();
        let d = run_figure(FigureId::Fig6, &c).unwrap();
        assert_eq!(d.rows.len(), 30);
        for row in &d.rows {
            match (&row[2], &row[3], &row[4]) {
                (Cell::Num(dl), Cell::Num(dp), Cell::Num(dlp)) => {
                    assert!(*dl > 0.0 && *dp > 0.0 && *dlp < 0.0);
                }
                other => panic!("non-finite characteristic {other:?}"),
            }
        }
    }
}
