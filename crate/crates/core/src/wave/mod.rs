//! Arithmetic random waves and their restriction to straight segments.
//!
//! Coefficients are stored on the antipodal half set only; the partner
//! coefficient is always `a_{−μ} = conj(a_μ)`, so every assembled value is a
//! sum of real trigonometric terms.

pub(crate) mod covariance;
mod zeros;

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::direction::Direction;
use crate::error::{invalid, ArwError, Result};
use crate::lattice::{EnergyLevel, LatticePoint};

pub use covariance::{covariance_exact, frequencies, CovarianceValues};
pub use zeros::{
    count_nodal_intersections, count_nodal_intersections_with, CountOptions, NodalCount,
};

/// Straight segment `t ↦ offset + tα`, `0 ≤ t ≤ L`, on the torus.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub direction: Direction,
    pub length: f64,
    pub offset: [f64; 2],
}

impl Segment {
    pub fn new(direction: Direction, length: f64) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(invalid(
                "L",
                format!("segment length {length} must be positive"),
            ));
        }
        Ok(Self {
            direction,
            length,
            offset: [0.0, 0.0],
        })
    }

    pub fn with_offset(mut self, offset: [f64; 2]) -> Self {
        self.offset = offset;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveTerm {
    pub mu: LatticePoint,
    pub coeff: Complex64,
}

/// One draw of the random eigenfunction
/// `F(x) = N^{-1/2} Σ_{μ∈𝓔} a_μ e^{2πi⟨μ,x⟩}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveSample {
    m: u64,
    n_points: usize,
    seed: Option<u64>,
    terms: Vec<WaveTerm>,
}

/// Fractional part reduced to `[-1/2, 1/2]`, so the phase `2π·θ` stays small.
fn reduce(theta: f64) -> f64 {
    theta - theta.round()
}

/// Draws `a_μ` for each half-set representative, with independent real and
/// imaginary parts `~ N(0, 1/2)`. The stream is ChaCha8 seeded through
/// `seed_from_u64(seed)`, consumed in angular order of the half set, real
/// part first.
pub fn sample_wave(level: &EnergyLevel, seed: u64) -> Result<WaveSample> {
    if level.n_points() < 2 {
        return Err(ArwError::TooFewPoints {
            m: level.m(),
            n: level.n_points(),
            needed: 2,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, FRAC_1_SQRT_2).expect("valid standard deviation");
    let terms = level
        .antipodal_half_set()
        .into_iter()
        .map(|mu| {
            let re = normal.sample(&mut rng);
            let im = normal.sample(&mut rng);
            WaveTerm {
                mu,
                coeff: Complex64::new(re, im),
            }
        })
        .collect();
    Ok(WaveSample {
        m: level.m(),
        n_points: level.n_points(),
        seed: Some(seed),
        terms,
    })
}

impl WaveSample {
    /// Builds a sample from explicit half-set coefficients, in the order of
    /// [`EnergyLevel::antipodal_half_set`].
    pub fn from_coefficients(level: &EnergyLevel, coeffs: &[Complex64]) -> Result<Self> {
        let half = level.antipodal_half_set();
        if coeffs.len() != half.len() {
            return Err(invalid(
                "coefficients",
                format!(
                    "expected {} half-set coefficients, got {}",
                    half.len(),
                    coeffs.len()
                ),
            ));
        }
        let terms = half
            .into_iter()
            .zip(coeffs)
            .map(|(mu, &coeff)| WaveTerm { mu, coeff })
            .collect();
        Ok(Self {
            m: level.m(),
            n_points: level.n_points(),
            seed: None,
            terms,
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn terms(&self) -> &[WaveTerm] {
        &self.terms
    }

    /// `a_μ` for any `μ ∈ 𝓔_m`, using the conjugate relation for the
    /// second half.
    pub fn coefficient(&self, mu: LatticePoint) -> Option<Complex64> {
        self.terms.iter().find_map(|t| {
            if t.mu == mu {
                Some(t.coeff)
            } else if t.mu.negated() == mu {
                Some(t.coeff.conj())
            } else {
                None
            }
        })
    }

    fn scale(&self) -> f64 {
        2.0 / (self.n_points as f64).sqrt()
    }

    /// `F(x) = (2/√N) Σ_half [Re a_μ cos 2π⟨μ,x⟩ − Im a_μ sin 2π⟨μ,x⟩]`.
    pub fn evaluate_field(&self, x: [f64; 2]) -> f64 {
        let sum: f64 = self
            .terms
            .iter()
            .map(|t| {
                let phase = reduce(t.mu.x as f64 * x[0] + t.mu.y as f64 * x[1]);
                let (s, c) = (TAU * phase).sin_cos();
                t.coeff.re * c - t.coeff.im * s
            })
            .sum();
        self.scale() * sum
    }

    /// The complex sum over all of `𝓔_m`, kept as a reference for the
    /// real-valued assembly in [`WaveSample::evaluate_field`].
    pub fn evaluate_full_sum(&self, x: [f64; 2]) -> Complex64 {
        let sum: Complex64 = self
            .terms
            .iter()
            .flat_map(|t| [(t.mu, t.coeff), (t.mu.negated(), t.coeff.conj())])
            .map(|(mu, a)| {
                let phase = reduce(mu.x as f64 * x[0] + mu.y as f64 * x[1]);
                a * Complex64::from_polar(1.0, TAU * phase)
            })
            .sum();
        sum / (self.n_points as f64).sqrt()
    }

    /// The restricted process `f(t) = F(offset + tα)`.
    pub fn along(&self, segment: &Segment) -> SegmentProcess {
        let alpha = segment.direction.alpha();
        let mut process = SegmentProcess {
            length: segment.length,
            freq: Vec::with_capacity(self.terms.len()),
            phase0: Vec::with_capacity(self.terms.len()),
            re: Vec::with_capacity(self.terms.len()),
            im: Vec::with_capacity(self.terms.len()),
            scale: self.scale(),
        };
        for t in &self.terms {
            let (x, y) = (t.mu.x as f64, t.mu.y as f64);
            process.freq.push(x * alpha[0] + y * alpha[1]);
            process
                .phase0
                .push(reduce(x * segment.offset[0] + y * segment.offset[1]));
            process.re.push(t.coeff.re);
            process.im.push(t.coeff.im);
        }
        process
    }

    /// `(f(t), f′(t))` along the segment.
    pub fn evaluate_along_segment(&self, segment: &Segment, t: f64) -> Result<(f64, f64)> {
        if !(0.0..=segment.length).contains(&t) {
            return Err(invalid(
                "t",
                format!("{t} is outside [0, {}]", segment.length),
            ));
        }
        Ok(self.along(segment).value_and_derivative(t))
    }
}

/// Precomputed frequencies `d_μ = ⟨μ, α⟩` and phases of one sample along
/// one segment.
#[derive(Clone, Debug)]
pub struct SegmentProcess {
    length: f64,
    freq: Vec<f64>,
    phase0: Vec<f64>,
    re: Vec<f64>,
    im: Vec<f64>,
    scale: f64,
}

impl SegmentProcess {
    pub fn length(&self) -> f64 {
        self.length
    }

    /// `max_μ |⟨μ, α⟩|`.
    pub fn max_frequency(&self) -> f64 {
        self.freq.iter().fold(0.0, |acc, d| acc.max(d.abs()))
    }

    /// Uniform bound on `|f′|`.
    pub fn slope_bound(&self) -> f64 {
        let sum: f64 = self
            .freq
            .iter()
            .zip(self.re.iter().zip(&self.im))
            .map(|(d, (re, im))| TAU * d.abs() * re.hypot(*im))
            .sum();
        self.scale * sum
    }

    /// Uniform bound on `|f″|`.
    pub fn curvature_bound(&self) -> f64 {
        let sum: f64 = self
            .freq
            .iter()
            .zip(self.re.iter().zip(&self.im))
            .map(|(d, (re, im))| (TAU * d).powi(2) * re.hypot(*im))
            .sum();
        self.scale * sum
    }

    pub fn value(&self, t: f64) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.freq.len() {
            let (s, c) = (TAU * reduce(self.phase0[i] + t * self.freq[i])).sin_cos();
            sum += self.re[i] * c - self.im[i] * s;
        }
        self.scale * sum
    }

    pub fn value_and_derivative(&self, t: f64) -> (f64, f64) {
        let mut f = 0.0;
        let mut df = 0.0;
        for i in 0..self.freq.len() {
            let (s, c) = (TAU * reduce(self.phase0[i] + t * self.freq[i])).sin_cos();
            f += self.re[i] * c - self.im[i] * s;
            df -= TAU * self.freq[i] * (self.re[i] * s + self.im[i] * c);
        }
        (self.scale * f, self.scale * df)
    }
}
