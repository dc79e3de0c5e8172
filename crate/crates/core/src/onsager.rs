//! Onsager matrices: assembly from transmissions and probe eliminations.
//!
//! The full 4x4 matrix relates J = (J_L^N, J_L^Q, J_P^N, J_P^Q) to
//! X = (X_L^V, X_L^T, X_P^V, X_P^T). Forcing J_P^N = 0 (voltage probe)
//! eliminates X_P^V and leaves a 3x3 matrix over (X_L^V, X_L^T, X_P^T);
//! additionally forcing J_P^Q = 0 (Buttiker probe) eliminates X_P^T and
//! leaves a 2x2 matrix over (X_L^V, X_L^T).

use crate::error::{Error, Result};
use crate::fermi::{fermi_derivative_moment, QuadratureSettings};
use crate::transmission::{Terminal, Transmission, TransmissionSet};

/// Pass/fail tolerance on bound residuals: a residual above -1e-9 counts as
/// satisfying the inequality.
pub const DEFAULT_BOUND_TOLERANCE: f64 = 1e-9;

/// Direction of the external magnetic field the matrix was assembled at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSign {
    Plus,
    Minus,
}

impl FieldSign {
    pub fn flipped(self) -> Self {
        match self {
            FieldSign::Plus => FieldSign::Minus,
            FieldSign::Minus => FieldSign::Plus,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FieldSign::Plus => "+B",
            FieldSign::Minus => "-B",
        }
    }
}

macro_rules! onsager_matrix {
    ($name:ident, $n:literal, $fluxes:literal, $forces:literal) => {
        #[doc = concat!("Onsager matrix over fluxes ", $fluxes, " and forces ", $forces, ".")]
        #[derive(Debug, Clone, Copy, PartialEq)]
        pub struct $name {
            pub entries: [[f64; $n]; $n],
            pub field: FieldSign,
        }

        impl $name {
            /// Fluxes produced by the given forces.
            pub fn apply(&self, forces: [f64; $n]) -> [f64; $n] {
                let mut out = [0.0; $n];
                for i in 0..$n {
                    for j in 0..$n {
                        out[i] += self.entries[i][j] * forces[j];
                    }
                }
                out
            }

            /// Entropy production rate J . X for the given forces.
            pub fn entropy_production(&self, forces: [f64; $n]) -> f64 {
                self.apply(forces)
                    .iter()
                    .zip(forces.iter())
                    .map(|(j, x)| j * x)
                    .sum()
            }

            /// Largest |L_ij - L_ji| within this matrix.
            pub fn max_asymmetry(&self) -> f64 {
                let mut worst = 0.0_f64;
                for i in 0..$n {
                    for j in 0..$n {
                        worst = worst.max((self.entries[i][j] - self.entries[j][i]).abs());
                    }
                }
                worst
            }

            /// Largest |self_ij - other_ji|: zero when `other` is the
            /// field-reversed matrix (Onsager-Casimir).
            pub fn casimir_residual(&self, other: &$name) -> f64 {
                let mut worst = 0.0_f64;
                for i in 0..$n {
                    for j in 0..$n {
                        worst = worst.max((self.entries[i][j] - other.entries[j][i]).abs());
                    }
                }
                worst
            }

            /// Smallest diagonal entry.
            pub fn min_diagonal(&self) -> f64 {
                (0..$n)
                    .map(|i| self.entries[i][i])
                    .fold(f64::INFINITY, f64::min)
            }
        }
    };
}

onsager_matrix!(
    Onsager4,
    4,
    "(J_L^N, J_L^Q, J_P^N, J_P^Q)",
    "(X_L^V, X_L^T, X_P^V, X_P^T)"
);
onsager_matrix!(
    Onsager3,
    3,
    "(J_L^N, J_L^Q, J_P^Q)",
    "(X_L^V, X_L^T, X_P^T)"
);
onsager_matrix!(Onsager2, 2, "(J_L^N, J_L^Q)", "(X_L^V, X_L^T)");

/// Assemble the full 4x4 matrix by thermal quadrature of the transmission
/// functions. Every entry is computed from its own integral, including the
/// pairs that are equal by construction, so cross-entry symmetries remain
/// honest numerical statements.
pub fn assemble_onsager4(
    t: &dyn Transmission,
    temperature: f64,
    chemical_potential: f64,
    field: FieldSign,
    settings: &QuadratureSettings,
) -> Result<Onsager4> {
    use Terminal::{Left, Probe, Right};
    let lp = |e: f64| t.transmission(Left, Probe, e);
    let pl = |e: f64| t.transmission(Probe, Left, e);
    let l_out = |e: f64| t.transmission(Left, Probe, e) + t.transmission(Left, Right, e);
    let p_out = |e: f64| t.transmission(Probe, Left, e) + t.transmission(Probe, Right, e);

    let moment = |order: u32, tau: &dyn Fn(f64) -> f64| -> Result<f64> {
        Ok(temperature
            * fermi_derivative_moment(order, temperature, chemical_potential, tau, settings)?)
    };

    let entries = [
        [
            moment(0, &l_out)?,
            moment(1, &l_out)?,
            -moment(0, &lp)?,
            -moment(1, &lp)?,
        ],
        [
            moment(1, &l_out)?,
            moment(2, &l_out)?,
            -moment(1, &lp)?,
            -moment(2, &lp)?,
        ],
        [
            -moment(0, &pl)?,
            -moment(1, &pl)?,
            moment(0, &p_out)?,
            moment(1, &p_out)?,
        ],
        [
            -moment(1, &pl)?,
            -moment(2, &pl)?,
            moment(1, &p_out)?,
            moment(2, &p_out)?,
        ],
    ];
    Ok(Onsager4 { entries, field })
}

/// Assemble the matrices at both field signs from a transmission set.
pub fn assemble_pair<M: Transmission>(
    set: &TransmissionSet<M>,
    temperature: f64,
    chemical_potential: f64,
    settings: &QuadratureSettings,
) -> Result<(Onsager4, Onsager4)> {
    Ok((
        assemble_onsager4(
            &set.forward,
            temperature,
            chemical_potential,
            FieldSign::Plus,
            settings,
        )?,
        assemble_onsager4(
            &set.reversed,
            temperature,
            chemical_potential,
            FieldSign::Minus,
            settings,
        )?,
    ))
}

fn pivot_ok(value: f64) -> bool {
    value != 0.0 && value.is_finite()
}

/// The probe voltage force that blocks particle flow, expressed as a linear
/// functional of the remaining forces.
#[derive(Debug, Clone, Copy)]
pub struct ProbeVoltageElimination {
    /// Coefficients of (X_L^V, X_L^T, X_P^T).
    pub response: [f64; 3],
}

impl ProbeVoltageElimination {
    pub fn probe_voltage(&self, x_lv: f64, x_lt: f64, x_pt: f64) -> f64 {
        self.response[0] * x_lv + self.response[1] * x_lt + self.response[2] * x_pt
    }
}

pub fn probe_voltage_elimination(l4: &Onsager4) -> Result<ProbeVoltageElimination> {
    let m = &l4.entries;
    if !pivot_ok(m[2][2]) {
        return Err(Error::SingularElimination { pivot: "L_33" });
    }
    Ok(ProbeVoltageElimination {
        response: [-m[2][0] / m[2][2], -m[2][1] / m[2][2], -m[2][3] / m[2][2]],
    })
}

/// Voltage-probe reduction: Schur complement of the J_P^N row/column.
pub fn reduce_voltage_probe(l4: &Onsager4) -> Result<Onsager3> {
    let m = &l4.entries;
    let p = m[2][2];
    if !pivot_ok(p) {
        return Err(Error::SingularElimination { pivot: "L_33" });
    }
    // Row indices of the surviving fluxes (J_L^N, J_L^Q, J_P^Q) and column
    // indices of the surviving forces (X_L^V, X_L^T, X_P^T) in the 4x4.
    let rows = [0usize, 1, 3];
    let cols = [0usize, 1, 3];
    let mut entries = [[0.0; 3]; 3];
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            entries[i][j] = (m[r][c] * p - m[r][2] * m[2][c]) / p;
        }
    }
    Ok(Onsager3 {
        entries,
        field: l4.field,
    })
}

/// The probe temperature force that blocks heat flow through the probe.
#[derive(Debug, Clone, Copy)]
pub struct ProbeTemperatureElimination {
    /// Coefficients of (X_L^V, X_L^T).
    pub response: [f64; 2],
}

impl ProbeTemperatureElimination {
    pub fn probe_temperature(&self, x_lv: f64, x_lt: f64) -> f64 {
        self.response[0] * x_lv + self.response[1] * x_lt
    }
}

pub fn probe_temperature_elimination(l3: &Onsager3) -> Result<ProbeTemperatureElimination> {
    let m = &l3.entries;
    if !pivot_ok(m[2][2]) {
        return Err(Error::SingularElimination { pivot: "L'_33" });
    }
    Ok(ProbeTemperatureElimination {
        response: [-m[2][0] / m[2][2], -m[2][1] / m[2][2]],
    })
}

/// Buttiker reduction: additionally force J_P^Q = 0.
pub fn reduce_buttiker(l3: &Onsager3) -> Result<Onsager2> {
    let m = &l3.entries;
    let p = m[2][2];
    if !pivot_ok(p) {
        return Err(Error::SingularElimination { pivot: "L'_33" });
    }
    let mut entries = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            entries[i][j] = (m[i][j] * p - m[i][2] * m[2][j]) / p;
        }
    }
    Ok(Onsager2 {
        entries,
        field: l3.field,
    })
}

/// The 2x2 matrix governing (J_L^N, J_L^Q) at a fixed thermal-bias ratio xi,
/// obtained by folding the probe thermal force into the left one.
#[derive(Debug, Clone, Copy)]
pub struct EffectiveTwoTerminal {
    pub l11: f64,
    pub l12: f64,
    pub l21: f64,
    pub l22: f64,
}

pub fn effective_two_terminal(l3: &Onsager3, xi: f64) -> EffectiveTwoTerminal {
    let m = &l3.entries;
    EffectiveTwoTerminal {
        l11: m[0][0],
        l12: m[0][1] + m[0][2] * xi,
        l21: m[1][0] + m[2][0] * xi,
        l22: m[1][1] + m[2][2] * xi * xi + (m[1][2] + m[2][1]) * xi,
    }
}

/// Residuals of the three current-conservation inequalities on an effective
/// two-terminal matrix. All must be non-negative for a physical conductor.
#[derive(Debug, Clone, Copy)]
pub struct BoundReport {
    /// (L11, L22, L11 L22 + L12 L21 - [L12^2 - L21^2]).
    pub residuals: [f64; 3],
    pub tolerance: f64,
}

impl BoundReport {
    pub fn passes(&self) -> [bool; 3] {
        [
            self.residuals[0] >= -self.tolerance,
            self.residuals[1] >= -self.tolerance,
            self.residuals[2] >= -self.tolerance,
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.passes().iter().all(|&p| p)
    }
}

fn bound_report(eff: &EffectiveTwoTerminal, tolerance: f64) -> BoundReport {
    BoundReport {
        residuals: [
            eff.l11,
            eff.l22,
            eff.l11 * eff.l22 + eff.l12 * eff.l21 - (eff.l12 * eff.l12 - eff.l21 * eff.l21),
        ],
        tolerance,
    }
}

/// Bound inequalities for the voltage-probe engine at thermal-bias ratio xi.
pub fn check_bounds(l3: &Onsager3, xi: f64, tolerance: f64) -> BoundReport {
    bound_report(&effective_two_terminal(l3, xi), tolerance)
}

/// The same inequalities in the Buttiker limit, directly on the 2x2 matrix.
pub fn check_bounds_buttiker(l2: &Onsager2, tolerance: f64) -> BoundReport {
    let eff = EffectiveTwoTerminal {
        l11: l2.entries[0][0],
        l12: l2.entries[0][1],
        l21: l2.entries[1][0],
        l22: l2.entries[1][1],
    };
    bound_report(&eff, tolerance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transmission::UniformTransmission;
    use std::f64::consts::PI;

    fn uniform_l4(tau: f64) -> Onsager4 {
        assemble_onsager4(
            &UniformTransmission { value: tau },
            1.0,
            0.0,
            FieldSign::Plus,
            &QuadratureSettings::default(),
        )
        .unwrap()
    }

    #[test]
    fn uniform_transmission_matches_closed_form() {
        let tau = 0.6;
        let l4 = uniform_l4(tau);
        let pi2_3 = PI * PI / 3.0;
        // Moments of a constant transmission: M0 = tau, M1 = 0, M2 = tau pi^2/3.
        let expected = [
            [2.0 * tau, 0.0, -tau, 0.0],
            [0.0, 2.0 * tau * pi2_3, 0.0, -tau * pi2_3],
            [-tau, 0.0, 2.0 * tau, 0.0],
            [0.0, -tau * pi2_3, 0.0, 2.0 * tau * pi2_3],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert!(
                    (l4.entries[i][j] - expected[i][j]).abs() < 1e-9,
                    "L[{i}][{j}] = {} expected {}",
                    l4.entries[i][j],
                    expected[i][j]
                );
            }
        }
    }

    #[test]
    fn uniform_matrix_is_symmetric() {
        assert!(uniform_l4(0.3).max_asymmetry() < 1e-10);
    }

    #[test]
    fn decoupled_probe_keeps_left_block() {
        // Zero probe coupling in rows/columns 1-2: the Schur correction vanishes.
        let mut entries = [[0.0; 4]; 4];
        entries[0][0] = 2.0;
        entries[0][1] = 0.3;
        entries[1][0] = 0.3;
        entries[1][1] = 5.0;
        entries[2][2] = 1.5;
        entries[2][3] = 0.2;
        entries[3][2] = 0.2;
        entries[3][3] = 4.0;
        let l4 = Onsager4 {
            entries,
            field: FieldSign::Plus,
        };
        let l3 = reduce_voltage_probe(&l4).unwrap();
        assert_eq!(l3.entries[0][0], 2.0);
        assert_eq!(l3.entries[0][1], 0.3);
        assert_eq!(l3.entries[1][0], 0.3);
        assert_eq!(l3.entries[1][1], 5.0);
        // Probe heat block survives with its own Schur complement.
        assert!((l3.entries[2][2] - (4.0 - 0.2 * 0.2 / 1.5)).abs() < 1e-15);
    }

    #[test]
    fn singular_probe_pivot_is_an_error() {
        let l4 = Onsager4 {
            entries: [[0.0; 4]; 4],
            field: FieldSign::Plus,
        };
        assert!(matches!(
            reduce_voltage_probe(&l4),
            Err(Error::SingularElimination { pivot: "L_33" })
        ));
        let l3 = Onsager3 {
            entries: [[0.0; 3]; 3],
            field: FieldSign::Plus,
        };
        assert!(matches!(
            reduce_buttiker(&l3),
            Err(Error::SingularElimination { pivot: "L'_33" })
        ));
    }

    #[test]
    fn block_diagonal_buttiker_reduction_is_identity_on_left_block() {
        let entries = [[1.5, 0.4, 0.0], [0.4, 2.5, 0.0], [0.0, 0.0, 3.0]];
        let l3 = Onsager3 {
            entries,
            field: FieldSign::Plus,
        };
        let l2 = reduce_buttiker(&l3).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((l2.entries[i][j] - entries[i][j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn symmetric_reduction_preserves_reciprocity() {
        let l3 = reduce_voltage_probe(&uniform_l4(0.7)).unwrap();
        let l2 = reduce_buttiker(&l3).unwrap();
        assert!((l2.entries[0][1] - l2.entries[1][0]).abs() < 1e-12);
    }

    #[test]
    fn voltage_probe_reduction_commutes_with_substitution() {
        let l4 = uniform_l4(0.9);
        let l3 = reduce_voltage_probe(&l4).unwrap();
        let elim = probe_voltage_elimination(&l4).unwrap();
        let (x_lv, x_lt, x_pt) = (0.013, -0.007, 0.004);
        let x_pv = elim.probe_voltage(x_lv, x_lt, x_pt);
        let full = l4.apply([x_lv, x_lt, x_pv, x_pt]);
        let reduced = l3.apply([x_lv, x_lt, x_pt]);
        assert!(full[2].abs() < 1e-15, "probe particle current must vanish");
        assert!((full[0] - reduced[0]).abs() < 1e-12);
        assert!((full[1] - reduced[1]).abs() < 1e-12);
        assert!((full[3] - reduced[2]).abs() < 1e-12);
    }

    #[test]
    fn diagonal_bounds_pass_for_positive_matrix() {
        let entries = [[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 3.0]];
        let l3 = Onsager3 {
            entries,
            field: FieldSign::Plus,
        };
        for xi in [-3.0, -0.5, 0.0, 0.5, 3.0] {
            let report = check_bounds(&l3, xi, DEFAULT_BOUND_TOLERANCE);
            assert!(report.all_pass(), "xi={xi}: {:?}", report.residuals);
        }
    }

    #[test]
    fn second_law_on_uniform_matrix() {
        let l4 = uniform_l4(0.5);
        let forces = [
            [0.01, -0.02, 0.005, 0.015],
            [-0.03, 0.0, 0.02, -0.01],
            [1.0, 1.0, 1.0, 1.0],
        ];
        for f in forces {
            assert!(l4.entropy_production(f) >= -1e-12);
        }
    }
}
