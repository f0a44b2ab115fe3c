//! Monte Carlo checks of the coefficient law and the field covariance.

use std::f64::consts::PI;

use arw_core::wave::{count_nodal_intersections, covariance_exact, sample_wave};
use arw_core::{Direction, EnergyLevel, Segment};

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn field_covariance(level: &EnergyLevel, dx: [f64; 2]) -> f64 {
    let n = level.n_points() as f64;
    level
        .points()
        .iter()
        .map(|p| (2.0 * PI * (p.x as f64 * dx[0] + p.y as f64 * dx[1])).cos())
        .sum::<f64>()
        / n
}

#[test]
fn coefficients_have_unit_second_moment() {
    let level = EnergyLevel::new(25).unwrap();
    let mut mods = Vec::new();
    let mut seed = 0;
    while mods.len() < 100_000 {
        let w = sample_wave(&level, seed).unwrap();
        mods.extend(w.terms().iter().map(|t| t.coeff.norm_sqr()));
        seed += 1;
    }
    let (mean, _) = mean_and_se(&mods);
    assert!((mean - 1.0).abs() < 0.02, "mean |a|² = {mean}");
}

#[test]
fn pointwise_variance_is_one() {
    let level = EnergyLevel::new(65).unwrap();
    let x = [0.137, 0.591];
    let sq: Vec<f64> = (0..20_000)
        .map(|s| sample_wave(&level, s).unwrap().evaluate_field(x).powi(2))
        .collect();
    let (mean, se) = mean_and_se(&sq);
    assert!((mean - 1.0).abs() < 4.0 * se, "E F² = {mean} ± {se}");
}

#[test]
fn covariance_matches_lattice_sum() {
    let level = EnergyLevel::new(25).unwrap();
    let x = [0.2, 0.7];
    for dx in [[0.03, 0.0], [0.1, -0.05], [0.31, 0.27]] {
        let y = [x[0] + dx[0], x[1] + dx[1]];
        let prods: Vec<f64> = (0..20_000)
            .map(|s| {
                let w = sample_wave(&level, 1_000_000 + s).unwrap();
                w.evaluate_field(x) * w.evaluate_field(y)
            })
            .collect();
        let (mean, se) = mean_and_se(&prods);
        let exact = field_covariance(&level, dx);
        assert!(
            (mean - exact).abs() < 4.0 * se,
            "dx {dx:?}: {mean} vs {exact} (se {se})"
        );
    }
}

#[test]
fn segment_process_is_stationary() {
    let level = EnergyLevel::new(65).unwrap();
    let dir = Direction::angle(1.0).unwrap();
    let seg = Segment::new(dir, 1.0).unwrap();
    let tau = 0.04;
    let exact = covariance_exact(&level, dir, tau);
    for t in [0.0, 0.35, 0.8] {
        let mut prods = Vec::new();
        let mut derivs = Vec::new();
        for s in 0..10_000 {
            let p = sample_wave(&level, s).unwrap().along(&seg);
            let (f, fd) = p.value_and_derivative(t);
            prods.push(f * p.value(t + tau));
            derivs.push(fd * fd);
        }
        let (mean, se) = mean_and_se(&prods);
        assert!(
            (mean - exact.r).abs() < 4.0 * se,
            "t = {t}: {mean} vs {}",
            exact.r
        );
        let (mean, se) = mean_and_se(&derivs);
        let r12_0 = covariance_exact(&level, dir, 0.0).r12;
        assert!(
            (mean - r12_0).abs() < 4.0 * se,
            "t = {t}: {mean} vs {r12_0}"
        );
    }
}

#[test]
fn derivative_variance_is_two_pi_squared_m() {
    // second derivative of r at 0 along any unit direction is 4π²m/2
    let level = EnergyLevel::new(325).unwrap();
    for dir in [Direction::HORIZONTAL, Direction::angle(0.7).unwrap()] {
        let r12 = covariance_exact(&level, dir, 0.0).r12;
        assert!(
            (r12 - 2.0 * PI * PI * 325.0).abs() < 1e-8 * r12,
            "{dir}: {r12}"
        );
    }
}

#[test]
fn count_law_is_translation_invariant() {
    let level = EnergyLevel::new(65).unwrap();
    let dir = Direction::rational(1, 2).unwrap();
    let counts = |offset: [f64; 2]| -> Vec<f64> {
        let seg = Segment::new(dir, 0.5).unwrap().with_offset(offset);
        (0..3000)
            .map(|s| {
                count_nodal_intersections(&sample_wave(&level, 50_000 + s).unwrap(), &seg).count
                    as f64
            })
            .collect()
    };
    let (m0, s0) = mean_and_se(&counts([0.0, 0.0]));
    let (m1, s1) = mean_and_se(&counts([0.43, 0.19]));
    assert!(
        (m0 - m1).abs() < 4.0 * (s0 * s0 + s1 * s1).sqrt(),
        "{m0} vs {m1}"
    );
}

#[test]
fn field_is_periodic_under_integer_shift() {
    let level = EnergyLevel::new(130).unwrap();
    let w = sample_wave(&level, 9).unwrap();
    let x = [0.123, 0.456];
    let a = w.evaluate_field(x);
    let b = w.evaluate_field([x[0] + 3.0, x[1] - 2.0]);
    assert!((a - b).abs() < 1e-10);
}
