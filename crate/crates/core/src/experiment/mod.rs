//! Seeded Monte Carlo ensembles of nodal-intersection counts.
//!
//! Sample `i` of an ensemble always uses seed `seed_base + i`, so the counts
//! do not depend on how many workers share the work.

mod config;
mod export;
mod sweep;

use std::collections::BTreeMap;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytics::{expected_intersections, variance_bound, BoundKind};
use crate::direction::Direction;
use crate::error::{invalid, Result};
use crate::lattice::{classify_sum_of_two_squares, EnergyLevel};
use crate::wave::{count_nodal_intersections_with, sample_wave, CountOptions, Segment};

pub use config::{parse_config, SEED_ENV_VAR};
pub use export::{
    export_results, import_json, to_csv_string, to_json_string, ExportFormat, CSV_COLUMNS,
};
pub use sweep::{sweep_sequence, GeneratedLevels, SweepBudget, SweepGenerator};

/// Acceptance band for the ensemble mean, in standard errors.
pub const DEFAULT_BAND_SIGMA: f64 = 4.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub m_list: Vec<u64>,
    pub sweep: Option<SweepGenerator>,
    pub direction: Direction,
    #[serde(rename = "L")]
    pub length: f64,
    pub samples: usize,
    pub seed_base: u64,
    pub workers: usize,
    pub oversampling: f64,
    pub gap_epsilon: f64,
    pub band_sigma: f64,
    pub format: ExportFormat,
    pub output_path: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(m_list: Vec<u64>, direction: Direction, length: f64, samples: usize) -> Self {
        Self {
            m_list,
            sweep: None,
            direction,
            length,
            samples,
            seed_base: 0,
            workers: 1,
            oversampling: CountOptions::default().oversampling,
            gap_epsilon: 0.3,
            band_sigma: DEFAULT_BAND_SIGMA,
            format: ExportFormat::Csv,
            output_path: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(&m) = self
            .m_list
            .iter()
            .find(|&&m| !classify_sum_of_two_squares(m).is_member)
        {
            return Err(crate::error::ArwError::NotRepresentable(m));
        }
        if self.samples < 2 {
            return Err(invalid("samples", format!("{} < 2", self.samples)));
        }
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(invalid("L", format!("{} must be positive", self.length)));
        }
        if self.workers == 0 {
            return Err(invalid("workers", "need at least one worker"));
        }
        if !(self.oversampling >= 1.0 && self.oversampling.is_finite()) {
            return Err(invalid(
                "oversampling",
                format!("{} < 1", self.oversampling),
            ));
        }
        if !(self.gap_epsilon > 0.0 && self.gap_epsilon < 0.5) {
            return Err(invalid(
                "epsilon",
                format!("{} is outside (0, 1/2)", self.gap_epsilon),
            ));
        }
        if self.band_sigma.is_nan() || self.band_sigma <= 0.0 {
            return Err(invalid("band_sigma", "must be positive"));
        }
        Ok(())
    }

    pub fn segment(&self) -> Result<Segment> {
        Segment::new(self.direction, self.length)
    }

    /// Levels to run: the sweep when one is configured, else `m_list`.
    pub fn levels(&self) -> Result<GeneratedLevels> {
        match &self.sweep {
            Some(g) => g.generate(SweepBudget::default()),
            None => Ok(GeneratedLevels {
                levels: self.m_list.clone(),
                dropped: Vec::new(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleResult {
    pub m: u64,
    #[serde(rename = "N")]
    pub n_points: usize,
    #[serde(rename = "R")]
    pub samples: usize,
    pub direction: Direction,
    #[serde(rename = "L")]
    pub length: f64,
    pub seed_base: u64,
    pub z_counts: Vec<usize>,
    #[serde(rename = "mean_Z")]
    pub mean_z: f64,
    /// Unbiased sample variance (divisor `R − 1`).
    #[serde(rename = "var_Z")]
    pub var_z: f64,
    pub se_mean: f64,
    /// Standard error of `var_Z` from the sample fourth central moment.
    #[serde(rename = "se_var_Z")]
    pub se_var: f64,
    pub theory_mean: f64,
    pub bound_values: BTreeMap<BoundKind, f64>,
    pub ratio_var_to_bound: BTreeMap<BoundKind, f64>,
    /// Samples in which the zero counter subdivided a near-tangential cell.
    pub suspicious_samples: usize,
}

impl EnsembleResult {
    pub fn mean_deviation(&self) -> f64 {
        (self.mean_z - self.theory_mean).abs()
    }

    pub fn mean_within_band(&self, sigmas: f64) -> bool {
        self.mean_deviation() <= sigmas * self.se_mean
    }
}

/// `(mean, unbiased variance, standard error of the variance)`.
pub fn summary_statistics(values: &[usize]) -> (f64, f64, f64) {
    let r = values.len() as f64;
    let mean = values.iter().map(|&v| v as f64).sum::<f64>() / r;
    let (mut m2, mut m4) = (0.0, 0.0);
    for &v in values {
        let d = v as f64 - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    let var = if values.len() > 1 {
        m2 / (r - 1.0)
    } else {
        0.0
    };
    let m4 = m4 / r;
    let se_var = if values.len() > 3 {
        ((m4 - (r - 3.0) / (r - 1.0) * var * var) / r)
            .max(0.0)
            .sqrt()
    } else {
        f64::NAN
    };
    (mean, var, se_var)
}

pub fn run_ensemble(config: &ExperimentConfig, m: u64) -> Result<EnsembleResult> {
    config.validate()?;
    let level = EnergyLevel::new(m)?;
    let segment = config.segment()?;
    let options = CountOptions {
        oversampling: config.oversampling,
        ..Default::default()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| invalid("workers", e.to_string()))?;
    let counts: Vec<(usize, bool)> = pool.install(|| {
        (0..config.samples)
            .into_par_iter()
            .map(|i| {
                let sample = sample_wave(&level, config.seed_base.wrapping_add(i as u64))?;
                let z = count_nodal_intersections_with(&sample, &segment, options);
                Ok((z.count, z.unresolved_cells > 0))
            })
            .collect::<Result<_>>()
    })?;
    let z_counts: Vec<usize> = counts.iter().map(|c| c.0).collect();
    let suspicious_samples = counts.iter().filter(|c| c.1).count();
    let (mean_z, var_z, se_var) = summary_statistics(&z_counts);

    let mut bound_values = BTreeMap::new();
    let mut ratio_var_to_bound = BTreeMap::new();
    for kind in BoundKind::ALL {
        if kind == BoundKind::RationalSlope && !config.direction.is_rational() {
            continue;
        }
        let bound = variance_bound(&level, config.direction, kind, config.gap_epsilon)?;
        bound_values.insert(kind, bound.value);
        if bound.value > 0.0 {
            ratio_var_to_bound.insert(kind, var_z / bound.value);
        }
    }

    Ok(EnsembleResult {
        m,
        n_points: level.n_points(),
        samples: config.samples,
        direction: config.direction,
        length: config.length,
        seed_base: config.seed_base,
        se_mean: (var_z / config.samples as f64).sqrt(),
        z_counts,
        mean_z,
        var_z,
        se_var,
        theory_mean: expected_intersections(m, config.length)?,
        bound_values,
        ratio_var_to_bound,
        suspicious_samples,
    })
}

/// Outcome of a full configured run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub results: Vec<EnsembleResult>,
    /// Levels dropped by the sweep budget.
    pub dropped: Vec<u64>,
    /// Levels whose mean fell outside the acceptance band.
    pub band_failures: Vec<u64>,
}

impl ExperimentReport {
    pub fn all_bands_pass(&self) -> bool {
        self.band_failures.is_empty()
    }
}

/// Runs every configured level and writes the export when an output path is
/// set. Nothing is written unless every ensemble completes.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let generated = config.levels()?;
    let results = generated
        .levels
        .iter()
        .map(|&m| run_ensemble(config, m))
        .collect::<Result<Vec<_>>>()?;
    if let Some(path) = &config.output_path {
        export_results(&results, config.format, path)?;
    }
    let band_failures = results
        .iter()
        .filter(|r| !r.mean_within_band(config.band_sigma))
        .map(|r| r.m)
        .collect();
    Ok(ExperimentReport {
        results,
        dropped: generated.dropped,
        band_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sample_variance_uses_unit_divisor() {
        let (mean, var, _) = summary_statistics(&[3, 7]);
        assert_eq!(mean, 5.0);
        assert_eq!(var, 8.0);
    }

    #[test]
    fn smoke_ensemble() {
        let config = ExperimentConfig::new(vec![25], Direction::HORIZONTAL, 0.5, 2);
        let r = run_ensemble(&config, 25).unwrap();
        assert_eq!(r.z_counts.len(), 2);
        let (a, b) = (r.z_counts[0] as f64, r.z_counts[1] as f64);
        assert_eq!(r.var_z, (a - b) * (a - b) / 2.0);
        assert_eq!(r.se_mean, (r.var_z / 2.0).sqrt());
        assert!(r.bound_values.contains_key(&BoundKind::RationalSlope));
    }

    #[test]
    fn worker_count_does_not_change_counts() {
        let mut config = ExperimentConfig::new(vec![65], Direction::angle(1.0).unwrap(), 0.5, 300);
        config.seed_base = 1234;
        let one = run_ensemble(&config, 65).unwrap();
        config.workers = 8;
        let eight = run_ensemble(&config, 65).unwrap();
        assert_eq!(one, eight);
        assert!(!one.bound_values.contains_key(&BoundKind::RationalSlope));
    }

    #[test]
    fn invalid_configs() {
        let config = ExperimentConfig::new(vec![25], Direction::HORIZONTAL, 0.5, 1);
        assert!(run_ensemble(&config, 25).is_err());
        let config = ExperimentConfig::new(vec![21], Direction::HORIZONTAL, 0.5, 10);
        assert!(config.validate().is_err());
        let config = ExperimentConfig::new(vec![25], Direction::HORIZONTAL, 0.5, 10);
        assert!(run_ensemble(&config, 3).is_err());
    }
}
