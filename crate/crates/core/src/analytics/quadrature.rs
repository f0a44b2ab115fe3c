//! Tensor-product trapezoid quadrature for `∫₀ᴸ∫₀ᴸ g(t₁ − t₂) dt₁ dt₂`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::direction::Direction;
use crate::lattice::EnergyLevel;
use crate::wave::{covariance::covariance_from_frequencies, frequencies};

/// Composite trapezoid rule on an `(n+1) × (n+1)` uniform grid.
///
/// The integrand only depends on the lag, so it is sampled once per lag
/// `(i − j)h` and the double sum runs over precomputed values.
pub fn trapezoid_lag_2d(g: impl Fn(f64) -> f64, length: f64, n: usize) -> f64 {
    let n = n.max(1);
    let h = length / n as f64;
    let lags: Vec<f64> = (0..=2 * n).map(|k| g((k as f64 - n as f64) * h)).collect();
    let weight = |i: usize| if i == 0 || i == n { 0.5 } else { 1.0 };
    let mut total = 0.0;
    for i in 0..=n {
        let mut row = 0.0;
        for j in 0..=n {
            row += weight(j) * lags[i + n - j];
        }
        total += weight(i) * row;
    }
    total * h * h
}

/// Trapezoid sums at `n/4`, `n/2`, `n` with two Richardson steps.
fn romberg(g: impl Fn(f64) -> f64, length: f64, n: usize) -> f64 {
    let t: Vec<f64> = [n / 4, n / 2, n]
        .iter()
        .map(|&k| trapezoid_lag_2d(&g, length, k))
        .collect();
    let r1 = (4.0 * t[1] - t[0]) / 3.0;
    let r2 = (4.0 * t[2] - t[1]) / 3.0;
    (16.0 * r2 - r1) / 15.0
}

/// Numerically integrated second moments of the normalised covariance and
/// its derivatives along a segment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureMoments {
    /// `∫∫ r²`.
    pub r: f64,
    /// `∫∫ (r₁ / 2π√m)²`.
    pub r1: f64,
    /// `∫∫ (r₁₂ / 4π²m)²`.
    pub r12: f64,
    /// Finest grid used.
    pub grid: usize,
}

/// Grid resolution: at least `min_grid` cells and eight per shortest period
/// `1/(2 max|d|)` of `r²`, rounded up to a power of two.
pub fn second_moment_quadrature(
    level: &EnergyLevel,
    direction: Direction,
    length: f64,
    min_grid: usize,
) -> QuadratureMoments {
    let freqs = frequencies(level, direction);
    let top = freqs.iter().fold(0.0f64, |a, d| a.max(d.abs()));
    let per_period = (16.0 * top * length).ceil() as usize;
    let n = min_grid.max(per_period).max(4).next_power_of_two();
    let m = level.m() as f64;
    let r = romberg(
        |tau| covariance_from_frequencies(&freqs, tau).r.powi(2),
        length,
        n,
    );
    let r1 = romberg(
        |tau| (covariance_from_frequencies(&freqs, tau).r1 / (2.0 * PI * m.sqrt())).powi(2),
        length,
        n,
    );
    let r12 = romberg(
        |tau| (covariance_from_frequencies(&freqs, tau).r12 / (4.0 * PI * PI * m)).powi(2),
        length,
        n,
    );
    QuadratureMoments {
        r,
        r1,
        r12,
        grid: n,
    }
}
