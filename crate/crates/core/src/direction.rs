//! Directions of straight segments on the torus.
//!
//! A direction is either a rational slope `p/q`, for which inner products
//! against lattice vectors are computed in exact integer arithmetic through
//! the primitive vector `(q, p)`, or an arbitrary angle in radians.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, ArwError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Direction {
    /// Slope `p/q` with `gcd(p, q) = 1` and `q > 0`; `q = 0` encodes the
    /// vertical direction and then `p = 1`.
    RationalSlope { p: i64, q: i64 },
    /// Angle to the first coordinate axis, in radians.
    Angle { theta: f64 },
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Direction {
    /// Horizontal direction `(1, 0)`.
    pub const HORIZONTAL: Direction = Direction::RationalSlope { p: 0, q: 1 };

    /// Rational slope `p/q`, reduced to lowest terms with a non-negative
    /// denominator.
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(invalid("alpha", "slope 0/0 is undefined"));
        }
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Direction::RationalSlope { p, q })
    }

    pub fn angle(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(invalid("alpha", format!("angle {theta} is not finite")));
        }
        Ok(Direction::Angle { theta })
    }

    /// Unit vector along the direction.
    pub fn alpha(&self) -> [f64; 2] {
        match *self {
            Direction::RationalSlope { p, q } => {
                let (q, p) = (q as f64, p as f64);
                let norm = q.hypot(p);
                [q / norm, p / norm]
            }
            Direction::Angle { theta } => {
                let (s, c) = theta.sin_cos();
                [c, s]
            }
        }
    }

    /// Primitive integer vector `(q, p)` collinear with the direction, for
    /// rational slopes.
    pub fn integer_vector(&self) -> Option<(i64, i64)> {
        match *self {
            Direction::RationalSlope { p, q } => Some((q, p)),
            Direction::Angle { .. } => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Direction::RationalSlope { .. })
    }

    /// Projection of an integer vector onto the unit direction.
    ///
    /// Zero is reported only when the inner product vanishes exactly: in
    /// integer arithmetic for rational slopes, as an exact `0.0` otherwise.
    pub fn project(&self, dx: i64, dy: i64) -> Projection {
        match *self {
            Direction::RationalSlope { p, q } => {
                let k = dx * q + dy * p;
                if k == 0 {
                    Projection::Orthogonal
                } else {
                    Projection::Oblique(k as f64 / (q as f64).hypot(p as f64))
                }
            }
            Direction::Angle { .. } => {
                let [a1, a2] = self.alpha();
                let v = dx as f64 * a1 + dy as f64 * a2;
                if v == 0.0 {
                    Projection::Orthogonal
                } else {
                    Projection::Oblique(v)
                }
            }
        }
    }
}

/// Inner product of a lattice difference with a unit direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Projection {
    Orthogonal,
    Oblique(f64),
}

impl Projection {
    pub fn value(self) -> f64 {
        match self {
            Projection::Orthogonal => 0.0,
            Projection::Oblique(v) => v,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Direction::RationalSlope { p, q } => write!(f, "{p}/{q}"),
            Direction::Angle { theta } => write!(f, "theta:{theta}"),
        }
    }
}

/// Parses `p/q` (rational slope) or `theta:<radians>`.
impl FromStr for Direction {
    type Err = ArwError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("theta:") {
            let theta: f64 = rest
                .trim()
                .parse()
                .map_err(|_| invalid("alpha", format!("cannot parse angle `{rest}`")))?;
            return Direction::angle(theta);
        }
        let (p, q) = s.split_once('/').ok_or_else(|| {
            invalid(
                "alpha",
                format!("expected `p/q` or `theta:<radians>`, got `{s}`"),
            )
        })?;
        let p: i64 = p
            .trim()
            .parse()
            .map_err(|_| invalid("alpha", format!("cannot parse numerator `{p}`")))?;
        let q: i64 = q
            .trim()
            .parse()
            .map_err(|_| invalid("alpha", format!("cannot parse denominator `{q}`")))?;
        Direction::rational(p, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_reduced_and_unit() {
        let d = Direction::rational(-4, -6).unwrap();
        assert_eq!(d, Direction::RationalSlope { p: 2, q: 3 });
        let [a1, a2] = d.alpha();
        assert!((a1.hypot(a2) - 1.0).abs() < 1e-15);
        // collinear with (q, p) = (3, 2)
        assert!((a1 * 2.0 - a2 * 3.0).abs() < 1e-15);
    }

    #[test]
    fn vertical_and_degenerate_slopes() {
        assert_eq!(
            Direction::rational(-5, 0).unwrap(),
            Direction::RationalSlope { p: 1, q: 0 }
        );
        assert!(Direction::rational(0, 0).is_err());
    }

    #[test]
    fn parse_both_forms() {
        assert_eq!("0/1".parse::<Direction>().unwrap(), Direction::HORIZONTAL);
        assert_eq!(
            "theta:1".parse::<Direction>().unwrap(),
            Direction::Angle { theta: 1.0 }
        );
        assert!("1.5".parse::<Direction>().is_err());
        assert!("theta:abc".parse::<Direction>().is_err());
        let d: Direction = "3/5".parse().unwrap();
        assert_eq!(d.to_string().parse::<Direction>().unwrap(), d);
    }

    #[test]
    fn exact_orthogonality_for_rational_slopes() {
        let d = Direction::rational(1, 1).unwrap();
        assert_eq!(d.project(1, -1), Projection::Orthogonal);
        assert!(
            matches!(d.project(1, 1), Projection::Oblique(v) if (v - 2f64.sqrt()).abs() < 1e-15)
        );
    }
}
