//! Arc, pair-sum and census properties over whole ranges of levels.

use std::f64::consts::PI;

use arw_core::lattice::{
    arc_max_occupancy, census_s, classify_sum_of_two_squares, near_orthogonal_arc,
    rational_pair_sum,
};
use arw_core::{EnergyLevel, LatticePoint};
use proptest::prelude::*;

fn levels_up_to(x: u64) -> impl Iterator<Item = EnergyLevel> {
    (1..=x)
        .filter(|&m| classify_sum_of_two_squares(m).is_member)
        .map(|m| EnergyLevel::new(m).unwrap())
}

#[test]
fn short_arcs_hold_at_most_two_points() {
    for level in levels_up_to(10_000) {
        let len = 0.999 * (level.m() as f64).powf(1.0 / 6.0);
        assert!(arc_max_occupancy(&level, len) <= 2, "m = {}", level.m());
    }
}

#[test]
fn cubic_root_arcs_hold_at_most_three_points() {
    // l = 3: exponent 1/2 − 1/(4·1 + 2) = 1/3 of the radius
    for level in levels_up_to(10_000) {
        let len = 2f64.sqrt() * (level.m() as f64).powf(1.0 / 6.0);
        assert!(arc_max_occupancy(&level, len) <= 3, "m = {}", level.m());
    }
}

#[test]
fn census_counts_and_ratio_trend() {
    // counts from an independent enumeration of a² + b² ≤ X
    let mut ratios = Vec::new();
    for (x, count) in [(1_000, 330), (10_000, 2749), (100_000, 24_028)] {
        let (c, ratio) = census_s(x).unwrap();
        assert_eq!(c, count);
        ratios.push(ratio);
    }
    for w in ratios.windows(2) {
        assert!(w[1] < w[0]);
        assert!((w[0] - w[1]) / w[0] < 0.05, "{ratios:?}");
    }
}

fn brute_near_orthogonal(
    level: &EnergyLevel,
    b: LatticePoint,
    beta: [f64; 2],
    c: f64,
) -> Vec<LatticePoint> {
    let norm = beta[0].hypot(beta[1]);
    level
        .points()
        .iter()
        .copied()
        .filter(|&p| {
            let (dx, dy) = ((b.x - p.x) as f64, (b.y - p.y) as f64);
            p != b && ((dx * beta[0] + dy * beta[1]) / norm).abs() <= c * dx.hypot(dy)
        })
        .collect()
}

fn member() -> impl Strategy<Value = u64> {
    (1u64..=2000).prop_filter("sum of two squares", |&m| {
        classify_sum_of_two_squares(m).is_member
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn near_orthogonal_arc_matches_brute_force(m in member(), idx in 0usize..1000, theta in 0.0..PI, c in 0.01f64..0.49) {
        let level = EnergyLevel::new(m).unwrap();
        let b = level.points()[idx % level.n_points()];
        let beta = [theta.cos(), theta.sin()];
        let arc = near_orthogonal_arc(&level, b, beta, c).unwrap();
        let mut got = arc.points.clone();
        let mut want = brute_near_orthogonal(&level, b, beta, c);
        got.sort();
        want.sort();
        prop_assert_eq!(got, want);
        prop_assert!(arc.exact_length <= arc.length);
        for p in &arc.points {
            prop_assert!(arc.contains_angle(p.angle(), level.radius()));
        }
    }

    #[test]
    fn rational_pair_sum_below_linear_bound(m in member(), q in 1i64..12, p in -12i64..12) {
        prop_assume!(num_gcd(q, p) == 1);
        let level = EnergyLevel::new(m).unwrap();
        let s = rational_pair_sum(&level, q, p).unwrap();
        prop_assert!(s <= 2.0 * PI * PI / 3.0 * level.n_points() as f64);
    }

    #[test]
    fn occupancy_is_monotone_in_length(m in member(), a in 0.0f64..20.0, b in 0.0f64..20.0) {
        let level = EnergyLevel::new(m).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(arc_max_occupancy(&level, lo) <= arc_max_occupancy(&level, hi));
        prop_assert!(arc_max_occupancy(&level, lo) >= 1);
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}
