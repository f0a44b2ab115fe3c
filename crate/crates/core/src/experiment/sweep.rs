use serde::{Deserialize, Serialize};

use super::{run_ensemble, EnsembleResult, ExperimentConfig};
use crate::error::{invalid, ArwError, Result};
use crate::lattice::{classify_sum_of_two_squares, factorize, r2_from_factorization};

/// Sequences of energy levels with growing `N_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SweepGenerator {
    /// `base^k` for `k = 1..=k_max`.
    Powers {
        base: u64,
        k_max: u32,
    },
    /// Running products of the primes `p ≡ 1 (mod 4)` with `p ≤ bound`:
    /// `5, 5·13, 5·13·17, …`.
    PrimeProducts {
        bound: u64,
    },
    Explicit {
        levels: Vec<u64>,
    },
}

/// Per-level cost limits for sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepBudget {
    pub max_points: usize,
    pub max_m: u64,
}

impl Default for SweepBudget {
    fn default() -> Self {
        Self {
            max_points: 256,
            max_m: 100_000_000,
        }
    }
}

impl SweepBudget {
    fn admits(&self, m: u64) -> bool {
        m <= self.max_m && r2_from_factorization(&factorize(m)) <= self.max_points
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedLevels {
    pub levels: Vec<u64>,
    /// Levels the generator would have produced but the budget excluded.
    pub dropped: Vec<u64>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && factorize(p) == [(p, 1)]
}

impl SweepGenerator {
    pub fn generate(&self, budget: SweepBudget) -> Result<GeneratedLevels> {
        let mut out = GeneratedLevels {
            levels: Vec::new(),
            dropped: Vec::new(),
        };
        match self {
            SweepGenerator::Powers { base, k_max } => {
                if !classify_sum_of_two_squares(*base).is_member || *base < 2 {
                    return Err(invalid(
                        "sweep",
                        format!("power base {base} must be a sum of two squares > 1"),
                    ));
                }
                let mut m = 1u64;
                for _ in 0..*k_max {
                    match m.checked_mul(*base) {
                        Some(next) if budget.admits(next) => {
                            m = next;
                            out.levels.push(m);
                        }
                        Some(next) => {
                            out.dropped.push(next);
                            break;
                        }
                        None => break,
                    }
                }
            }
            SweepGenerator::PrimeProducts { bound } => {
                let mut m = 1u64;
                for p in (5..=*bound).step_by(4).filter(|&p| is_prime(p)) {
                    match m.checked_mul(p) {
                        Some(next) if budget.admits(next) => {
                            m = next;
                            out.levels.push(m);
                        }
                        Some(next) => {
                            out.dropped.push(next);
                            break;
                        }
                        None => break,
                    }
                }
            }
            SweepGenerator::Explicit { levels } => {
                for &m in levels {
                    if !classify_sum_of_two_squares(m).is_member {
                        return Err(ArwError::NotRepresentable(m));
                    }
                    if budget.admits(m) {
                        out.levels.push(m);
                    } else {
                        out.dropped.push(m);
                    }
                }
            }
        }
        if !out.dropped.is_empty() {
            log::warn!(
                "sweep truncated by budget {budget:?}: dropped {:?}",
                out.dropped
            );
        }
        Ok(out)
    }
}

/// Runs one ensemble per generated level, in generation order.
pub fn sweep_sequence(
    generator: &SweepGenerator,
    config: &ExperimentConfig,
) -> Result<Vec<EnsembleResult>> {
    generator
        .generate(SweepBudget::default())?
        .levels
        .into_iter()
        .map(|m| run_ensemble(config, m))
        .collect()
}
