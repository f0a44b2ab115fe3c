//! Lattice points on short arcs.
//!
//! Arcs are closed (endpoints included) and measured by arc length on the
//! circle of radius `√m`, so an arc of length `ℓ` spans the angle `ℓ/√m`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{EnergyLevel, LatticePoint};
use crate::error::{invalid, Result};

/// Largest number of lattice points on any closed arc of the given length.
///
/// Angular sort plus a two-pointer sweep over the angle list unrolled once
/// around the circle.
pub fn arc_max_occupancy(level: &EnergyLevel, arc_length: f64) -> usize {
    let n = level.n_points();
    let width = arc_length.max(0.0) / level.radius();
    if width >= TAU {
        return n;
    }
    let angles = level.angles();
    let unrolled: Vec<f64> = angles
        .iter()
        .copied()
        .chain(angles.iter().map(|a| a + TAU))
        .collect();
    let mut best = 1;
    let mut end = 0;
    for start in 0..n {
        end = end.max(start);
        while end + 1 < start + n && unrolled[end + 1] - unrolled[start] <= width {
            end += 1;
        }
        best = best.max(end - start + 1);
    }
    best
}

/// The arc containing every `B′` whose chord `B − B′` is nearly orthogonal
/// to `β`, together with those lattice points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NearOrthogonalArc {
    /// Polar angle of the arc midpoint, in `[0, 2π)`.
    pub center_angle: f64,
    /// Certified arc length `4c√m / √(1 − c²)`.
    pub length: f64,
    /// Exact arc length `4 arcsin(c) √m` of the region the condition carves out.
    pub exact_length: f64,
    pub points: Vec<LatticePoint>,
}

impl NearOrthogonalArc {
    pub fn half_width(&self, radius: f64) -> f64 {
        self.length / (2.0 * radius)
    }

    pub fn contains_angle(&self, angle: f64, radius: f64) -> bool {
        angular_distance(angle, self.center_angle) <= self.half_width(radius)
    }
}

pub(crate) fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// All `B′ ∈ 𝓔_m`, `B′ ≠ B`, with `|⟨B − B′, β⟩| ≤ c |B − B′|`.
///
/// The chord from `B` at angle `φ` to `B′` at angle `ψ` points along
/// `(φ + ψ)/2 + π/2`, so the condition confines `ψ` to the arc centred at
/// `2·arg(β) − φ` of angular half-width `2 arcsin c`. Candidates are taken
/// from the slightly wider certified cover and then filtered exactly.
pub fn near_orthogonal_arc(
    level: &EnergyLevel,
    b: LatticePoint,
    beta: [f64; 2],
    c: f64,
) -> Result<NearOrthogonalArc> {
    if !(c > 0.0 && c < 0.5) {
        return Err(invalid("c", format!("{c} is outside (0, 1/2)")));
    }
    if !level.contains(b) {
        return Err(invalid(
            "B",
            format!(
                "({}, {}) is not on the circle of radius √{}",
                b.x,
                b.y,
                level.m()
            ),
        ));
    }
    let norm = beta[0].hypot(beta[1]);
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(invalid("beta", "direction must be a nonzero finite vector"));
    }
    let beta = [beta[0] / norm, beta[1] / norm];
    let radius = level.radius();
    let center_angle = (2.0 * beta[1].atan2(beta[0]) - b.angle()).rem_euclid(TAU);
    let arc = NearOrthogonalArc {
        center_angle,
        length: 4.0 * c * radius / (1.0 - c * c).sqrt(),
        exact_length: 4.0 * c.asin() * radius,
        points: Vec::new(),
    };
    let half_width = arc.half_width(radius).min(PI);
    let points = level
        .points()
        .iter()
        .copied()
        .filter(|&p| p != b && angular_distance(p.angle(), center_angle) <= half_width)
        .filter(|&p| is_near_orthogonal(b, p, beta, c))
        .collect();
    Ok(NearOrthogonalArc { points, ..arc })
}

pub(crate) fn is_near_orthogonal(b: LatticePoint, p: LatticePoint, beta: [f64; 2], c: f64) -> bool {
    let (dx, dy) = b.diff(p);
    let (dx, dy) = (dx as f64, dy as f64);
    (dx * beta[0] + dy * beta[1]).abs() <= c * dx.hypot(dy)
}
