//! Terminals and energy-resolved transmission providers.

/// The three reservoirs. `Right` is the temperature and chemical-potential
/// reference; `Probe` is the floating terminal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Terminal {
    Left,
    Probe,
    Right,
}

impl Terminal {
    pub const ALL: [Terminal; 3] = [Terminal::Left, Terminal::Probe, Terminal::Right];

    pub fn index(self) -> usize {
        match self {
            Terminal::Left => 0,
            Terminal::Probe => 1,
            Terminal::Right => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Terminal::Left => "L",
            Terminal::Probe => "P",
            Terminal::Right => "R",
        }
    }
}

/// Energy-resolved transmission probabilities between ordered terminal pairs.
///
/// Implementations must be non-negative and satisfy the unitarity sum rule
/// (row sums equal column sums at every energy); see `sum_rule_residual`.
pub trait Transmission: Sync {
    /// T_{from,to}(E).
    fn transmission(&self, from: Terminal, to: Terminal, energy: f64) -> f64;
}

/// Largest violation of the sum rule
/// sum_{b != a} T_ab(E) = sum_{b != a} T_ba(E) over the three terminals.
pub fn sum_rule_residual(t: &dyn Transmission, energy: f64) -> f64 {
    let mut worst = 0.0_f64;
    for a in Terminal::ALL {
        let mut out = 0.0;
        let mut into = 0.0;
        for b in Terminal::ALL {
            if a != b {
                out += t.transmission(a, b, energy);
                into += t.transmission(b, a, energy);
            }
        }
        worst = worst.max((out - into).abs());
    }
    worst
}

/// Identical transmission for every ordered pair; its own field reversal.
#[derive(Debug, Clone, Copy)]
pub struct UniformTransmission {
    pub value: f64,
}

impl Transmission for UniformTransmission {
    fn transmission(&self, _from: Terminal, _to: Terminal, _energy: f64) -> f64 {
        self.value
    }
}

/// A transmission provider together with its field-reversed companion.
#[derive(Debug, Clone)]
pub struct TransmissionSet<M> {
    pub forward: M,
    pub reversed: M,
}

impl<M: Transmission> TransmissionSet<M> {
    pub fn new(forward: M, reversed: M) -> Self {
        Self { forward, reversed }
    }

    /// Largest violation of field-reversal reciprocity
    /// T_ab(E; +B) = T_ba(E; -B) over ordered pairs at one energy.
    pub fn reciprocity_residual(&self, energy: f64) -> f64 {
        let mut worst = 0.0_f64;
        for a in Terminal::ALL {
            for b in Terminal::ALL {
                if a != b {
                    let fwd = self.forward.transmission(a, b, energy);
                    let rev = self.reversed.transmission(b, a, energy);
                    worst = worst.max((fwd - rev).abs());
                }
            }
        }
        worst
    }
}

impl<M: Transmission + Clone> TransmissionSet<M> {
    /// For field-symmetric providers the reversal is the provider itself.
    pub fn symmetric(model: M) -> Self {
        Self {
            reversed: model.clone(),
            forward: model,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_satisfies_sum_rule_and_reciprocity() {
        let set = TransmissionSet::symmetric(UniformTransmission { value: 0.8 });
        assert_eq!(sum_rule_residual(&set.forward, 0.3), 0.0);
        assert_eq!(set.reciprocity_residual(0.3), 0.0);
    }

    #[test]
    fn terminal_indices_are_stable() {
        for (i, t) in Terminal::ALL.iter().enumerate() {
            assert_eq!(t.index(), i);
        }
    }
}
