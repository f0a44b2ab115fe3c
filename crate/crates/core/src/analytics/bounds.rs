//! Variance bound shapes.
//!
//! The bounds hold up to unspecified constants; every value here uses
//! `C = 1` and is meant for ratio tracking, not as a certified bound.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::direction::Direction;
use crate::error::{invalid, ArwError, Result};
use crate::lattice::EnergyLevel;

pub const BOUND_CONSTANT: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `m/N`, rational slopes only.
    RationalSlope,
    /// `m·(log m / N)^{4/5}`, any segment.
    IrrationalUnconditional,
    /// `m/N`, under the short-arc conjecture or the lattice gap condition.
    ConjecturalOrGapped,
}

impl BoundKind {
    pub const ALL: [BoundKind; 3] = [
        BoundKind::RationalSlope,
        BoundKind::IrrationalUnconditional,
        BoundKind::ConjecturalOrGapped,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::RationalSlope => "rational_slope",
            BoundKind::IrrationalUnconditional => "irrational_unconditional",
            BoundKind::ConjecturalOrGapped => "conjectural_or_gapped",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VarianceBound {
    pub kind: BoundKind,
    pub value: f64,
    pub hypothesis_note: String,
}

/// Whether `min_{μ≠μ′} |μ − μ′| > (√m)^{1−ε}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapCheck {
    pub epsilon: f64,
    pub min_distance: f64,
    pub threshold: f64,
    pub holds: bool,
}

pub fn gap_condition(level: &EnergyLevel, epsilon: f64) -> Result<GapCheck> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(invalid("epsilon", format!("{epsilon} is outside (0, 1/2)")));
    }
    let min_distance = level.min_pair_distance()?;
    let threshold = level.radius().powf(1.0 - epsilon);
    Ok(GapCheck {
        epsilon,
        min_distance,
        threshold,
        holds: min_distance > threshold,
    })
}

/// Evaluates the bound shape of `kind` at `level`. `gap_epsilon` only feeds
/// the note of [`BoundKind::ConjecturalOrGapped`].
pub fn variance_bound(
    level: &EnergyLevel,
    direction: Direction,
    kind: BoundKind,
    gap_epsilon: f64,
) -> Result<VarianceBound> {
    let m = level.m() as f64;
    let n = level.n_points() as f64;
    let (value, hypothesis_note) = match kind {
        BoundKind::RationalSlope => {
            if !direction.is_rational() {
                return Err(ArwError::DirectionMismatch { kind: kind.name() });
            }
            (
                BOUND_CONSTANT * m / n,
                format!("unconditional for rational slope {direction}; constant depends on the direction"),
            )
        }
        BoundKind::IrrationalUnconditional => (
            BOUND_CONSTANT * m * (m.ln() / n).powf(0.8),
            "unconditional for any segment".to_string(),
        ),
        BoundKind::ConjecturalOrGapped => {
            let gap = gap_condition(level, gap_epsilon)?;
            let note = format!(
                "assumes O(1) lattice points on arcs of length (√m)^(1/2+ε); gap condition with ε = {}: \
                 min distance {} {} threshold {} ({})",
                gap.epsilon,
                gap.min_distance,
                if gap.holds { ">" } else { "<=" },
                gap.threshold,
                if gap.holds { "holds" } else { "fails" },
            );
            (BOUND_CONSTANT * m / n, note)
        }
    };
    Ok(VarianceBound {
        kind,
        value,
        hypothesis_note,
    })
}
