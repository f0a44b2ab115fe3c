//! Closed-form theory values: the mean zero count, the second moment of the
//! covariance along a segment, and the variance bound shapes.

mod bounds;
mod quadrature;
mod second_moment;

use std::f64::consts::PI;

use crate::error::{invalid, ArwError, Result};
use crate::lattice::classify_sum_of_two_squares;

pub use bounds::{
    gap_condition, variance_bound, BoundKind, GapCheck, VarianceBound, BOUND_CONSTANT,
};
pub use quadrature::{second_moment_quadrature, trapezoid_lag_2d, QuadratureMoments};
pub use second_moment::{second_moment_closed_form, SecondMomentReport};

fn require_member(m: u64) -> Result<()> {
    if classify_sum_of_two_squares(m).is_member {
        Ok(())
    } else {
        Err(ArwError::NotRepresentable(m))
    }
}

/// Constant zero density `K₁ ≡ √2·√m` of the restricted process.
pub fn zero_density_constant(m: u64) -> Result<f64> {
    require_member(m)?;
    Ok((2.0 * m as f64).sqrt())
}

/// `E[Z] = √(2m)·L`. A zero length gives zero with a warning.
pub fn expected_intersections(m: u64, length: f64) -> Result<f64> {
    let density = zero_density_constant(m)?;
    if !(length >= 0.0 && length.is_finite()) {
        return Err(invalid(
            "L",
            format!("{length} must be a non-negative length"),
        ));
    }
    if length == 0.0 {
        log::warn!("zero-length segment: expected intersection count is 0");
    }
    Ok(density * length)
}

/// `|∫₀ᴸ e^{2πitd} dt|² = sin²(πLd)/(πd)²`, equal to `L²` at `d = 0`.
///
/// Near the diagonal the Taylor form `L²(1 − x²/3 + 2x⁴/45)`, `x = πLd`, is
/// used instead of the quotient.
pub fn sinc_pair_integral(d: f64, length: f64) -> f64 {
    let l2 = length * length;
    if d == 0.0 {
        return l2;
    }
    let x = PI * length * d;
    if x.abs() < 1e-4 {
        let x2 = x * x;
        return l2 * (1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 45.0);
    }
    let s = x.sin();
    s * s / (PI * d * PI * d)
}
