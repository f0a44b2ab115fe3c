//! Second moment of the covariance along a segment, as a lattice pair sum.
//!
//! Every moment reduces to `|∫₀ᴸ e^{2πit⟨μ−μ′,α⟩} dt|²` summed over ordered
//! pairs, e.g. `∫∫ r² = (1/N²) Σ sinc_pair(⟨μ − μ′, α⟩, L)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::sinc_pair_integral;
use crate::direction::{Direction, Projection};
use crate::lattice::EnergyLevel;
use crate::wave::frequencies;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecondMomentReport {
    pub length: f64,
    /// `∫∫ r² + (r₁/√m)² + (r₂/√m)² + (r₁₂/m)²`.
    pub r2_total: f64,
    /// `∫∫ r²`, from the pair sum over frequency differences.
    pub term_r: f64,
    /// `∫∫ (r₁ / 2π√m)²`.
    pub term_r1: f64,
    /// `∫∫ (r₂ / 2π√m)²`, equal to `term_r1`.
    pub term_r2: f64,
    /// `∫∫ (r₁₂ / 4π²m)²`.
    pub term_r12: f64,
    /// `(1/N²) Σ_{𝓔²} |∫₀ᴸ e^{2πit⟨μ−μ′,α⟩} dt|²`, assembled from the
    /// three parts below.
    pub pair_sum_bound: f64,
    /// Diagonal pairs: `L²·N / N²`.
    pub diagonal_part: f64,
    /// Off-diagonal pairs with `μ − μ′ ⊥ α`, each contributing `L²/N²`.
    pub perpendicular_part: f64,
    #[serde(rename = "A_alpha_part")]
    pub a_alpha_part: f64,
    pub perpendicular_pairs: usize,
    /// `(1/N²) Σ_{A_α} min(L², 1/(π²⟨μ−μ′,α⟩²))`.
    #[serde(rename = "A_alpha_bound")]
    pub a_alpha_bound: f64,
    /// `Σ_{A_α} min(1, 1/⟨μ−μ′,α⟩²)`.
    pub min_pair_sum: f64,
    /// `(1/N²)(2L²·N + max(1, L²)·min_pair_sum)`, which dominates
    /// `pair_sum_bound`.
    pub shape_bound: f64,
}

pub fn second_moment_closed_form(
    level: &EnergyLevel,
    direction: Direction,
    length: f64,
) -> SecondMomentReport {
    let n = level.n_points() as f64;
    let n2 = n * n;
    let m = level.m() as f64;
    let l2 = length * length;
    let freqs = frequencies(level, direction);

    let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
    for &d in &freqs {
        for &e in &freqs {
            let k = sinc_pair_integral(d - e, length);
            s0 += k;
            s1 += d * e * k;
            s2 += d * d * e * e * k;
        }
    }
    let term_r = s0 / n2;
    let term_r1 = s1 / (m * n2);
    let term_r12 = s2 / (m * m * n2);

    let pts = level.points();
    let mut perpendicular_pairs = 0usize;
    let (mut a_sum, mut a_bound, mut min_sum) = (0.0, 0.0, 0.0);
    for (i, &mu) in pts.iter().enumerate() {
        for (j, &nu) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let (dx, dy) = mu.diff(nu);
            match direction.project(dx, dy) {
                Projection::Orthogonal => perpendicular_pairs += 1,
                Projection::Oblique(k) => {
                    a_sum += sinc_pair_integral(k, length);
                    a_bound += l2.min(1.0 / (PI * PI * k * k));
                    min_sum += (1.0 / (k * k)).min(1.0);
                }
            }
        }
    }
    let diagonal_part = l2 * n / n2;
    let perpendicular_part = l2 * perpendicular_pairs as f64 / n2;
    let a_alpha_part = a_sum / n2;

    SecondMomentReport {
        length,
        r2_total: term_r + 8.0 * PI * PI * term_r1 + 16.0 * PI.powi(4) * term_r12,
        term_r,
        term_r1,
        term_r2: term_r1,
        term_r12,
        pair_sum_bound: diagonal_part + perpendicular_part + a_alpha_part,
        diagonal_part,
        perpendicular_part,
        a_alpha_part,
        perpendicular_pairs,
        a_alpha_bound: a_bound / n2,
        min_pair_sum: min_sum,
        shape_bound: (2.0 * l2 * n + l2.max(1.0) * min_sum) / n2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_circle_split() {
        let level = EnergyLevel::new(1).unwrap();
        let rep = second_moment_closed_form(&level, Direction::HORIZONTAL, 1.0);
        assert!((rep.diagonal_part - 0.25).abs() < 1e-15);
        assert_eq!(rep.perpendicular_pairs, 2);
        assert!((rep.perpendicular_part - 2.0 / 16.0).abs() < 1e-15);
        // with L = 1 every oblique pair has an integer projection, so its
        // integral vanishes
        assert!(rep.a_alpha_part.abs() < 1e-30);
        assert!((rep.term_r - 0.375).abs() < 1e-15);
    }

    #[test]
    fn split_reassembles_direct_sum() {
        for m in [1u64, 2, 5, 25, 65, 325, 1105] {
            let level = EnergyLevel::new(m).unwrap();
            for dir in [
                Direction::HORIZONTAL,
                Direction::rational(1, 2).unwrap(),
                Direction::angle(1.0).unwrap(),
            ] {
                for l in [0.3, 1.0, 2.5] {
                    let rep = second_moment_closed_form(&level, dir, l);
                    assert!(
                        (rep.term_r - rep.pair_sum_bound).abs() <= 1e-12 * rep.term_r,
                        "m={m}"
                    );
                    assert!(rep.term_r1 <= rep.pair_sum_bound * (1.0 + 1e-12));
                    assert!(rep.term_r12 <= rep.pair_sum_bound * (1.0 + 1e-12));
                    assert!(rep.a_alpha_part <= rep.a_alpha_bound * (1.0 + 1e-12));
                    assert!(rep.pair_sum_bound <= rep.shape_bound * (1.0 + 1e-12));
                    assert!(rep.perpendicular_pairs <= level.n_points());
                    assert!((rep.diagonal_part - l * l / level.n_points() as f64).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn generic_angle_has_no_perpendicular_pairs() {
        let level = EnergyLevel::new(1105).unwrap();
        let rep = second_moment_closed_form(&level, Direction::angle(1.0).unwrap(), 1.0);
        assert_eq!(rep.perpendicular_pairs, 0);
    }
}
