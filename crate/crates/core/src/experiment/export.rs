use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::EnsembleResult;
use crate::analytics::BoundKind;
use crate::error::{invalid, ArwError, Result};

pub const CSV_COLUMNS: [&str; 12] = [
    "m",
    "N",
    "R",
    "mean_Z",
    "se_mean",
    "theory_mean",
    "var_Z",
    "bound_rational",
    "bound_irrational",
    "ratio_rational",
    "ratio_irrational",
    "seed_base",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = ArwError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            other => Err(invalid(
                "format",
                format!("expected csv or json, got `{other}`"),
            )),
        }
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExportFormat::Csv => "csv",
            ExportFormat::Json => "json",
        })
    }
}

fn opt(v: Option<&f64>) -> String {
    v.map(f64::to_string).unwrap_or_default()
}

pub fn to_csv_string(results: &[EnsembleResult]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS)?;
    for r in results {
        w.write_record([
            r.m.to_string(),
            r.n_points.to_string(),
            r.samples.to_string(),
            r.mean_z.to_string(),
            r.se_mean.to_string(),
            r.theory_mean.to_string(),
            r.var_z.to_string(),
            opt(r.bound_values.get(&BoundKind::RationalSlope)),
            opt(r.bound_values.get(&BoundKind::IrrationalUnconditional)),
            opt(r.ratio_var_to_bound.get(&BoundKind::RationalSlope)),
            opt(r
                .ratio_var_to_bound
                .get(&BoundKind::IrrationalUnconditional)),
            r.seed_base.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| ArwError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn to_json_string(results: &[EnsembleResult]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(results)?;
    s.push('\n');
    Ok(s)
}

pub fn export_results(results: &[EnsembleResult], format: ExportFormat, path: &Path) -> Result<()> {
    let body = match format {
        ExportFormat::Csv => to_csv_string(results)?,
        ExportFormat::Json => to_json_string(results)?,
    };
    fs::write(path, body)?;
    Ok(())
}

pub fn import_json(path: &Path) -> Result<Vec<EnsembleResult>> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direction::Direction;
    use crate::experiment::{run_ensemble, ExperimentConfig};

    #[test]
    fn empty_csv_is_header_only() {
        assert_eq!(
            to_csv_string(&[]).unwrap(),
            format!("{}\n", CSV_COLUMNS.join(","))
        );
    }

    #[test]
    fn csv_rows_follow_column_order() {
        let config = ExperimentConfig::new(vec![25], Direction::angle(1.0).unwrap(), 0.5, 10);
        let r = run_ensemble(&config, 25).unwrap();
        let csv = to_csv_string(std::slice::from_ref(&r)).unwrap();
        let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(row.len(), CSV_COLUMNS.len());
        assert_eq!(row[0], "25");
        assert_eq!(row[1], "12");
        assert_eq!(row[2], "10");
        // no rational bound for an irrational direction
        assert_eq!(row[7], "");
        assert_eq!(
            row[8].parse::<f64>().unwrap(),
            r.bound_values[&BoundKind::IrrationalUnconditional]
        );
    }

    #[test]
    fn json_round_trip_and_byte_stability() {
        let dir = tempfile::tempdir().unwrap();
        let config = ExperimentConfig::new(vec![25, 65], Direction::HORIZONTAL, 0.5, 25);
        let results: Vec<_> = [25, 65]
            .iter()
            .map(|&m| run_ensemble(&config, m).unwrap())
            .collect();
        let a = dir.path().join("a.json");
        let b = dir.path().join("b.json");
        export_results(&results, ExportFormat::Json, &a).unwrap();
        export_results(&results, ExportFormat::Json, &b).unwrap();
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
        assert_eq!(import_json(&a).unwrap(), results);
        assert!(export_results(
            &results,
            ExportFormat::Csv,
            &dir.path().join("missing/x.csv")
        )
        .is_err());
    }
}
