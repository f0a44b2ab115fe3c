//! Sums over ordered pairs of lattice points.
//!
//! `A_v` is the set of ordered pairs `(μ, μ′) ∈ 𝓔²` with `⟨μ − μ′, v⟩ ≠ 0`;
//! diagonal pairs never belong to it.

use serde::{Deserialize, Serialize};

use super::{EnergyLevel, LatticePoint};
use crate::direction::{Direction, Projection};
use crate::error::{invalid, Result};

/// Vector used to test `⟨μ − μ′, v⟩ ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PairProbe {
    /// Exact integer test.
    Integer(i64, i64),
    /// Floating test; only an exact `0.0` counts as orthogonal.
    Real([f64; 2]),
}

impl PairProbe {
    fn validate(self) -> Result<Self> {
        let zero = match self {
            PairProbe::Integer(a, b) => a == 0 && b == 0,
            PairProbe::Real([a, b]) => a == 0.0 && b == 0.0,
        };
        if zero {
            return Err(invalid("v", "probe vector must be nonzero"));
        }
        Ok(self)
    }

    fn is_oblique(self, (dx, dy): (i64, i64)) -> bool {
        match self {
            PairProbe::Integer(a, b) => dx * a + dy * b != 0,
            PairProbe::Real([a, b]) => dx as f64 * a + dy as f64 * b != 0.0,
        }
    }
}

impl From<Direction> for PairProbe {
    fn from(d: Direction) -> Self {
        match d.integer_vector() {
            Some((q, p)) => PairProbe::Integer(q, p),
            None => PairProbe::Real(d.alpha()),
        }
    }
}

/// Ordered pairs in `A_v`, in row-major order over the angular ordering of
/// `𝓔_m`.
pub fn pair_set_a(
    level: &EnergyLevel,
    probe: impl Into<PairProbe>,
) -> Result<impl Iterator<Item = (LatticePoint, LatticePoint)> + '_> {
    let probe = probe.into().validate()?;
    let pts = level.points();
    Ok(pts
        .iter()
        .flat_map(move |&a| pts.iter().map(move |&b| (a, b)))
        .filter(move |&(a, b)| probe.is_oblique(a.diff(b))))
}

/// Pairs of `A_α` with their projections `⟨μ − μ′, α⟩` onto the unit direction.
pub(crate) fn oblique_projections(
    level: &EnergyLevel,
    direction: Direction,
) -> impl Iterator<Item = (LatticePoint, LatticePoint, f64)> + '_ {
    let pts = level.points();
    pts.iter()
        .flat_map(move |&a| pts.iter().map(move |&b| (a, b)))
        .filter_map(move |(a, b)| {
            let (dx, dy) = a.diff(b);
            match direction.project(dx, dy) {
                Projection::Orthogonal => None,
                Projection::Oblique(v) => Some((a, b, v)),
            }
        })
}

/// `Σ_{A_(q,p)} 1/⟨μ − μ′, (q, p)⟩²` with the inner product taken in integer
/// arithmetic. Bounded by `(2π²/3)·N_m` since a line meets the circle in at
/// most two points.
pub fn rational_pair_sum(level: &EnergyLevel, q: i64, p: i64) -> Result<f64> {
    if q == 0 && p == 0 {
        return Err(invalid("(q, p)", "vector must be nonzero"));
    }
    let mut g = (q.abs(), p.abs());
    while g.1 != 0 {
        g = (g.1, g.0 % g.1);
    }
    if g.0 != 1 {
        return Err(invalid(
            "(q, p)",
            format!("gcd({q}, {p}) = {} is not 1", g.0),
        ));
    }
    let pts = level.points();
    let mut total = 0.0;
    for &a in pts {
        for &b in pts {
            let (dx, dy) = a.diff(b);
            let k = dx * q + dy * p;
            if k != 0 {
                total += 1.0 / (k as f64 * k as f64);
            }
        }
    }
    Ok(total)
}

/// `Σ_{A_α} min(1, 1/⟨μ − μ′, α⟩²)` for the unit vector `α` of `direction`.
pub fn min_pair_sum(level: &EnergyLevel, direction: Direction) -> f64 {
    oblique_projections(level, direction)
        .map(|(_, _, v)| (1.0 / (v * v)).min(1.0))
        .sum()
}

/// The pair sum over `A_α` next to its split into three (overlapping)
/// ranges: short chords, nearly orthogonal chords, and the rest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairSumReport {
    /// `Σ_{A_α} min(1, 1/⟨μ − μ′, α⟩²)`.
    pub total: f64,
    /// `#{(μ, μ′) ∈ A_α : |μ − μ′| ≤ a}`.
    pub range_small_gap: f64,
    /// `#{(μ, μ′) ∈ A_α : |⟨μ − μ′, α⟩| ≤ c |μ − μ′|}`.
    pub range_near_orthogonal: f64,
    /// `Σ 1/⟨μ − μ′, α⟩²` over pairs with `|μ − μ′| ≥ a` and
    /// `|⟨μ − μ′, α⟩| ≥ c |μ − μ′|`.
    pub range_far: f64,
    /// `(a, c)`.
    pub parameters: (f64, f64),
}

impl PairSumReport {
    pub fn range_total(&self) -> f64 {
        self.range_small_gap + self.range_near_orthogonal + self.range_far
    }
}

pub fn range_decomposition(
    level: &EnergyLevel,
    direction: Direction,
    a: f64,
    c: f64,
) -> Result<PairSumReport> {
    if !(a > 0.0 && a <= 2.0 * level.radius()) {
        return Err(invalid("a", format!("{a} is outside (0, 2√m]")));
    }
    if !(c > 0.0 && c < 0.5) {
        return Err(invalid("c", format!("{c} is outside (0, 1/2)")));
    }
    let mut report = PairSumReport {
        total: 0.0,
        range_small_gap: 0.0,
        range_near_orthogonal: 0.0,
        range_far: 0.0,
        parameters: (a, c),
    };
    for (mu, nu, v) in oblique_projections(level, direction) {
        let dist = mu.dist(nu);
        report.total += (1.0 / (v * v)).min(1.0);
        if dist <= a {
            report.range_small_gap += 1.0;
        }
        if v.abs() <= c * dist {
            report.range_near_orthogonal += 1.0;
        }
        if dist >= a && v.abs() >= c * dist {
            report.range_far += 1.0 / (v * v);
        }
    }
    Ok(report)
}

/// Balancing choice `a = c√m = (J/l)^{1/5} N^{1/5} m^{1/5}`, given that every
/// arc of length `J` holds at most `l` lattice points. Returns `(a, c)`.
pub fn optimal_range_parameters(
    arc_length: f64,
    max_points: f64,
    n_points: usize,
    m: u64,
) -> (f64, f64) {
    let a = (arc_length / max_points * n_points as f64 * m as f64).powf(0.2);
    (a, a / (m as f64).sqrt())
}
