//! Arithmetic random waves on the torus `ℝ²/ℤ²`.
//!
//! * [`lattice`]: lattice points on circles `x² + y² = m`, arc occupancy,
//!   pair sums and censuses over admissible levels.
//! * [`wave`]: Gaussian eigenfunctions, their restriction to segments and
//!   nodal-intersection counting.
//! * [`analytics`]: expectation, second moment of the covariance and the
//!   variance bound shapes.
//! * [`experiment`]: seeded Monte Carlo ensembles, sweeps and export.

pub mod analytics;
pub mod direction;
pub mod error;
pub mod experiment;
pub mod lattice;
pub mod wave;

pub use direction::Direction;
pub use error::{ArwError, Result};
pub use lattice::{EnergyLevel, LatticePoint};
pub use wave::{Segment, WaveSample};
