use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::direction::Direction;
use crate::lattice::EnergyLevel;

/// Covariance `r(τ) = E[f(t₁) f(t₂)]`, `τ = t₁ − t₂`, and its derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CovarianceValues {
    pub r: f64,
    /// `∂r/∂t₁`.
    pub r1: f64,
    /// `∂r/∂t₂ = −r1`.
    pub r2: f64,
    /// `∂²r/∂t₁∂t₂`.
    pub r12: f64,
}

/// `d_μ = ⟨μ, α⟩` over all of `𝓔_m`, in angular order.
pub fn frequencies(level: &EnergyLevel, direction: Direction) -> Vec<f64> {
    let [a1, a2] = direction.alpha();
    level
        .points()
        .iter()
        .map(|p| p.x as f64 * a1 + p.y as f64 * a2)
        .collect()
}

/// Closed forms; the imaginary parts cancel between `μ` and `−μ`:
///
/// `r = (1/N) Σ cos 2πτd`, `r1 = −(2π/N) Σ d sin 2πτd`,
/// `r12 = (4π²/N) Σ d² cos 2πτd`.
pub fn covariance_exact(level: &EnergyLevel, direction: Direction, tau: f64) -> CovarianceValues {
    let freqs = frequencies(level, direction);
    covariance_from_frequencies(&freqs, tau)
}

pub(crate) fn covariance_from_frequencies(freqs: &[f64], tau: f64) -> CovarianceValues {
    let n = freqs.len() as f64;
    let (mut r, mut r1, mut r12) = (0.0, 0.0, 0.0);
    for &d in freqs {
        let (s, c) = (TAU * tau * d).sin_cos();
        r += c;
        r1 -= d * s;
        r12 += d * d * c;
    }
    let r1 = TAU * r1 / n;
    CovarianceValues {
        r: r / n,
        r1,
        r2: -r1,
        r12: 4.0 * PI * PI * r12 / n,
    }
}
