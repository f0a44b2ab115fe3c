//! Lattice points on circles `x² + y² = m`.

mod arcs;
mod census;
mod factor;
mod pairs;

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, ArwError, Result};

pub use arcs::{arc_max_occupancy, near_orthogonal_arc, NearOrthogonalArc};
pub use census::{
    census_rows, census_s, density_one_check, third_root_arc, CensusRow, DensityReport,
};
pub use factor::{
    classify_sum_of_two_squares, factorize, isqrt, r2_from_factorization, Classification,
};
pub use pairs::{
    min_pair_sum, optimal_range_parameters, pair_set_a, range_decomposition, rational_pair_sum,
    PairSumReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn norm2(self) -> i64 {
        self.x * self.x + self.y * self.y
    }

    /// Polar angle in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        let a = (self.y as f64).atan2(self.x as f64);
        if a < 0.0 {
            a + TAU
        } else {
            a
        }
    }

    pub fn negated(self) -> Self {
        Self::new(-self.x, -self.y)
    }

    pub fn diff(self, other: Self) -> (i64, i64) {
        (self.x - other.x, self.y - other.y)
    }

    pub fn dist(self, other: Self) -> f64 {
        let (dx, dy) = self.diff(other);
        (dx as f64).hypot(dy as f64)
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        Self::new(x, y)
    }
}

/// An admissible energy level `m` with its full lattice point set, sorted by
/// polar angle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    m: u64,
    points: Vec<LatticePoint>,
    factorization: Vec<(u64, u32)>,
}

impl EnergyLevel {
    /// Enumerates `𝓔_m` by scanning `0 ≤ x ≤ √m` and emitting every sign
    /// and swap image exactly once.
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(invalid("m", "energy level must be positive"));
        }
        if m > i64::MAX as u64 / 2 {
            return Err(invalid("m", format!("{m} is too large")));
        }
        let class = classify_sum_of_two_squares(m);
        if !class.is_member {
            return Err(ArwError::NotRepresentable(m));
        }
        let mut points = Vec::with_capacity(r2_from_factorization(&class.factorization));
        for x in 0..=isqrt(m) {
            let y2 = m - x * x;
            let y = isqrt(y2);
            if y * y != y2 {
                continue;
            }
            let (x, y) = (x as i64, y as i64);
            for sx in if x == 0 { &[1][..] } else { &[1, -1][..] } {
                for sy in if y == 0 { &[1][..] } else { &[1, -1][..] } {
                    points.push(LatticePoint::new(sx * x, sy * y));
                }
            }
        }
        points.sort_by(|a, b| a.angle().total_cmp(&b.angle()));
        Ok(Self {
            m,
            points,
            factorization: class.factorization,
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn radius(&self) -> f64 {
        (self.m as f64).sqrt()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    /// `N_m = r₂(m)`.
    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn factorization(&self) -> &[(u64, u32)] {
        &self.factorization
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        p.norm2() == self.m as i64
    }

    /// One representative of each antipodal pair `{μ, −μ}`: the one with
    /// polar angle in `[0, π)`.
    pub fn antipodal_half_set(&self) -> Vec<LatticePoint> {
        self.points
            .iter()
            .copied()
            .filter(|p| p.y > 0 || (p.y == 0 && p.x > 0))
            .collect()
    }

    /// Smallest distance between two distinct lattice points.
    ///
    /// On a circle the chord length grows with the angular gap, so the
    /// closest pair is adjacent in angular order.
    pub fn min_pair_distance(&self) -> Result<f64> {
        let n = self.points.len();
        if n < 2 {
            return Err(ArwError::TooFewPoints {
                m: self.m,
                n,
                needed: 2,
            });
        }
        let best = (0..n)
            .map(|i| {
                let (dx, dy) = self.points[i].diff(self.points[(i + 1) % n]);
                dx * dx + dy * dy
            })
            .min()
            .unwrap();
        Ok((best as f64).sqrt())
    }

    /// Polar angles of the points, ascending.
    pub(crate) fn angles(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.angle()).collect()
    }
}

/// `r₂(m)` from the factorization formula.
pub fn count_representations(m: u64) -> Result<usize> {
    let class = classify_sum_of_two_squares(m);
    if !class.is_member {
        return Err(ArwError::NotRepresentable(m));
    }
    Ok(r2_from_factorization(&class.factorization))
}

pub fn enumerate_lattice_points(m: u64) -> Result<EnergyLevel> {
    EnergyLevel::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn set(pts: &[LatticePoint]) -> BTreeSet<(i64, i64)> {
        pts.iter().map(|p| (p.x, p.y)).collect()
    }

    fn brute_points(m: i64) -> BTreeSet<(i64, i64)> {
        let r = (m as f64).sqrt().ceil() as i64 + 1;
        let mut out = BTreeSet::new();
        for x in -r..=r {
            for y in -r..=r {
                if x * x + y * y == m {
                    out.insert((x, y));
                }
            }
        }
        out
    }

    #[test]
    fn small_levels() {
        let l1 = EnergyLevel::new(1).unwrap();
        assert_eq!(
            l1.points(),
            &[(1, 0).into(), (0, 1).into(), (-1, 0).into(), (0, -1).into()]
        );
        let l5 = EnergyLevel::new(5).unwrap();
        assert_eq!(set(l5.points()), brute_points(5));
        assert_eq!(l5.n_points(), 8);
        assert_eq!(count_representations(25).unwrap(), 12);
        assert_eq!(count_representations(2).unwrap(), 4);
        assert_eq!(count_representations(65).unwrap(), 16);
        assert_eq!(
            set(EnergyLevel::new(25).unwrap().points()),
            brute_points(25)
        );
    }

    #[test]
    fn rejects_non_members() {
        assert!(matches!(
            EnergyLevel::new(3),
            Err(ArwError::NotRepresentable(3))
        ));
        assert!(matches!(
            count_representations(21),
            Err(ArwError::NotRepresentable(21))
        ));
        assert!(EnergyLevel::new(0).is_err());
    }

    #[test]
    fn large_level_satisfies_defining_equation() {
        let m = 100_000_000u64;
        let level = EnergyLevel::new(m).unwrap();
        assert!(level.points().iter().all(|p| p.norm2() == m as i64));
        assert_eq!(level.n_points(), count_representations(m).unwrap());
    }

    #[test]
    fn angular_order_and_symmetry() {
        for m in [1u64, 2, 5, 25, 65, 325, 1105] {
            let level = EnergyLevel::new(m).unwrap();
            let angles = level.angles();
            assert!(angles.windows(2).all(|w| w[0] < w[1]));
            assert!(angles.iter().all(|a| (0.0..TAU).contains(a)));
            for p in level.points() {
                for q in [
                    p.negated(),
                    LatticePoint::new(p.y, p.x),
                    LatticePoint::new(p.x, -p.y),
                ] {
                    assert!(level.points().contains(&q));
                }
            }
        }
    }

    #[test]
    fn half_set_partitions_level() {
        assert_eq!(
            EnergyLevel::new(1).unwrap().antipodal_half_set(),
            vec![(1, 0).into(), (0, 1).into()]
        );
        for m in [5u64, 25, 65, 85] {
            let level = EnergyLevel::new(m).unwrap();
            let half = level.antipodal_half_set();
            assert_eq!(half.len() * 2, level.n_points());
            let mut all: Vec<_> = half
                .iter()
                .copied()
                .chain(half.iter().map(|p| p.negated()))
                .collect();
            all.sort();
            let mut full = level.points().to_vec();
            full.sort();
            assert_eq!(all, full);
        }
    }

    #[test]
    fn min_pair_distance_matches_all_pairs() {
        assert!(
            (EnergyLevel::new(5).unwrap().min_pair_distance().unwrap() - 2f64.sqrt()).abs() < 1e-15
        );
        assert!(
            (EnergyLevel::new(1).unwrap().min_pair_distance().unwrap() - 2f64.sqrt()).abs() < 1e-15
        );
        assert_eq!(
            EnergyLevel::new(2).unwrap().min_pair_distance().unwrap(),
            2.0
        );
        for m in (1..3000u64).filter(|&m| classify_sum_of_two_squares(m).is_member) {
            let level = EnergyLevel::new(m).unwrap();
            let pts = level.points();
            let mut best = f64::INFINITY;
            for (i, a) in pts.iter().enumerate() {
                for b in &pts[i + 1..] {
                    best = best.min(a.dist(*b));
                }
            }
            assert_eq!(level.min_pair_distance().unwrap(), best, "m = {m}");
        }
    }
}
