//! Plain-text `key = value` experiment configuration.
//!
//! ```text
//! # comments and blank lines are ignored
//! m = 25, 65, 325
//! alpha = 0/1
//! L = 0.5
//! samples = 2000
//! seed_base = 0
//! workers = 8
//! output = results.csv
//! ```
//!
//! `sweep = powers:65:3`, `sweep = primes:17` or `sweep = list:25,65` may
//! replace `m`.

use std::fmt;
use std::path::PathBuf;

use super::{ExperimentConfig, SweepGenerator};
use crate::direction::Direction;
use crate::error::{ArwError, Result};

/// Environment variable that overrides `seed_base`.
pub const SEED_ENV_VAR: &str = "ARW_SEED";

const KEYS: [&str; 12] = [
    "m",
    "sweep",
    "alpha",
    "L",
    "samples",
    "seed_base",
    "workers",
    "oversampling",
    "epsilon",
    "band_sigma",
    "format",
    "output",
];

fn parse_list(s: &str) -> std::result::Result<Vec<u64>, String> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<u64>()
                .map_err(|_| format!("cannot parse level `{}`", v.trim()))
        })
        .collect()
}

fn parse_sweep(s: &str) -> std::result::Result<SweepGenerator, String> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    let num = |v: &str| {
        v.parse::<u64>()
            .map_err(|_| format!("cannot parse `{v}` in sweep"))
    };
    match parts.as_slice() {
        ["powers", base, k] => Ok(SweepGenerator::Powers {
            base: num(base)?,
            k_max: num(k)?
                .try_into()
                .map_err(|_| "exponent too large".to_string())?,
        }),
        ["primes", bound] => Ok(SweepGenerator::PrimeProducts { bound: num(bound)? }),
        ["list", levels] => Ok(SweepGenerator::Explicit {
            levels: parse_list(levels)?,
        }),
        _ => Err(format!(
            "expected powers:<base>:<k>, primes:<bound> or list:<m,...>, got `{s}`"
        )),
    }
}

/// Parses a configuration and validates it. `m` or `sweep` is required,
/// as is `L`; `workers` defaults to the available parallelism.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut config = ExperimentConfig::new(Vec::new(), Direction::HORIZONTAL, f64::NAN, 2000);
    config.workers = std::thread::available_parallelism().map_or(1, usize::from);
    let mut seen: Vec<&str> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |reason: String| ArwError::Config {
            line: line_no,
            reason,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let Some(&key) = KEYS.iter().find(|&&k| k == key) else {
            return Err(err(format!("unknown key `{key}`")));
        };
        if seen.contains(&key) {
            return Err(err(format!("duplicate key `{key}`")));
        }
        seen.push(key);
        let bad = |what: &str| err(format!("invalid {key} `{value}`: {what}"));
        match key {
            "m" => config.m_list = parse_list(value).map_err(&err)?,
            "sweep" => config.sweep = Some(parse_sweep(value).map_err(&err)?),
            "alpha" => {
                config.direction = value.parse().map_err(|e: ArwError| err(e.to_string()))?
            }
            "L" => config.length = value.parse().map_err(|_| bad("not a number"))?,
            "samples" => config.samples = value.parse().map_err(|_| bad("not an integer"))?,
            "seed_base" => config.seed_base = value.parse().map_err(|_| bad("not an integer"))?,
            "workers" => config.workers = value.parse().map_err(|_| bad("not an integer"))?,
            "oversampling" => {
                config.oversampling = value.parse().map_err(|_| bad("not a number"))?
            }
            "epsilon" => config.gap_epsilon = value.parse().map_err(|_| bad("not a number"))?,
            "band_sigma" => config.band_sigma = value.parse().map_err(|_| bad("not a number"))?,
            "format" => config.format = value.parse().map_err(|e: ArwError| err(e.to_string()))?,
            "output" => config.output_path = Some(PathBuf::from(value)),
            _ => unreachable!(),
        }
    }
    if config.m_list.is_empty() && config.sweep.is_none() {
        return Err(ArwError::Config {
            line: 0,
            reason: "one of `m` or `sweep` is required".into(),
        });
    }
    if !seen.contains(&"L") {
        return Err(ArwError::Config {
            line: 0,
            reason: "`L` is required".into(),
        });
    }
    config.validate()?;
    Ok(config)
}

impl ExperimentConfig {
    /// Applies `ARW_SEED` when it is set.
    pub fn with_env_seed(mut self) -> Result<Self> {
        if let Ok(raw) = std::env::var(SEED_ENV_VAR) {
            self.seed_base = raw.trim().parse().map_err(|_| ArwError::InvalidParameter {
                name: SEED_ENV_VAR,
                reason: format!("`{raw}` is not a 64-bit unsigned integer"),
            })?;
        }
        Ok(self)
    }
}

/// Writes the configuration back in the file format; parsing the output
/// yields the same configuration.
impl fmt::Display for ExperimentConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.m_list.is_empty() {
            let list: Vec<String> = self.m_list.iter().map(u64::to_string).collect();
            writeln!(f, "m = {}", list.join(","))?;
        }
        match &self.sweep {
            Some(SweepGenerator::Powers { base, k_max }) => {
                writeln!(f, "sweep = powers:{base}:{k_max}")?
            }
            Some(SweepGenerator::PrimeProducts { bound }) => writeln!(f, "sweep = primes:{bound}")?,
            Some(SweepGenerator::Explicit { levels }) => {
                let list: Vec<String> = levels.iter().map(u64::to_string).collect();
                writeln!(f, "sweep = list:{}", list.join(","))?
            }
            None => {}
        }
        writeln!(f, "alpha = {}", self.direction)?;
        writeln!(f, "L = {}", self.length)?;
        writeln!(f, "samples = {}", self.samples)?;
        writeln!(f, "seed_base = {}", self.seed_base)?;
        writeln!(f, "workers = {}", self.workers)?;
        writeln!(f, "oversampling = {}", self.oversampling)?;
        writeln!(f, "epsilon = {}", self.gap_epsilon)?;
        writeln!(f, "band_sigma = {}", self.band_sigma)?;
        writeln!(f, "format = {}", self.format)?;
        if let Some(p) = &self.output_path {
            writeln!(f, "output = {}", p.display())?;
        }
        Ok(())
    }
}
