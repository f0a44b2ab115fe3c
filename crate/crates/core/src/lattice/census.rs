//! Scans over all admissible levels up to a bound.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{arc_max_occupancy, classify_sum_of_two_squares, EnergyLevel};
use crate::error::{invalid, Result};

fn members(x: u64) -> impl ParallelIterator<Item = u64> {
    (1..=x)
        .into_par_iter()
        .filter(|&m| classify_sum_of_two_squares(m).is_member)
}

/// `|S(X)|` and the normalised count `|S(X)|·√(log X)/X`, which tends to the
/// Landau–Ramanujan constant. `m = 1` counts as a member.
pub fn census_s(x: u64) -> Result<(usize, f64)> {
    if x < 2 {
        return Err(invalid("X", format!("{x} < 2")));
    }
    let count = members(x).count();
    let xf = x as f64;
    Ok((count, count as f64 * xf.ln().sqrt() / xf))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub m: u64,
    #[serde(rename = "N")]
    pub n: usize,
    pub min_gap: f64,
    /// Occupancy of arcs of length `0.999·(√m)^{1/3}`.
    pub arc_occ_third_root: usize,
    /// Occupancy of arcs of length `(√m)^{1/2}`.
    pub arc_occ_fourth_root: usize,
}

/// Arc length just inside the range where at most two lattice points fit.
pub fn third_root_arc(m: u64) -> f64 {
    0.999 * (m as f64).powf(1.0 / 6.0)
}

pub fn census_rows(x: u64) -> Result<Vec<CensusRow>> {
    if x < 1 {
        return Err(invalid("X", "bound must be positive"));
    }
    members(x)
        .map(|m| {
            let level = EnergyLevel::new(m)?;
            Ok(CensusRow {
                m,
                n: level.n_points(),
                min_gap: level.min_pair_distance()?,
                arc_occ_third_root: arc_max_occupancy(&level, third_root_arc(m)),
                arc_occ_fourth_root: arc_max_occupancy(&level, (m as f64).powf(0.25)),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub x: u64,
    pub epsilon: f64,
    pub members: usize,
    pub failing: usize,
    pub fraction: f64,
    /// Levels whose closest pair is no farther apart than `(√m)^{1−ε}`.
    pub failing_levels: Vec<u64>,
}

/// Counts `m ∈ S(X)` whose lattice points are *not* separated by more than
/// `(√m)^{1−ε}`.
pub fn density_one_check(x: u64, epsilon: f64) -> Result<DensityReport> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(invalid("epsilon", format!("{epsilon} is outside (0, 1/2)")));
    }
    if x < 1 {
        return Err(invalid("X", "bound must be positive"));
    }
    let flagged: Vec<(u64, bool)> = members(x)
        .map(|m| {
            let level = EnergyLevel::new(m)?;
            let gap = level.min_pair_distance()?;
            Ok((m, gap <= (m as f64).sqrt().powf(1.0 - epsilon)))
        })
        .collect::<Result<_>>()?;
    let failing_levels: Vec<u64> = flagged.iter().filter(|f| f.1).map(|f| f.0).collect();
    let members = flagged.len();
    Ok(DensityReport {
        x,
        epsilon,
        members,
        failing: failing_levels.len(),
        fraction: failing_levels.len() as f64 / members as f64,
        failing_levels,
    })
}
