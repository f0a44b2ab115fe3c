use std::fs;

use arw_core::experiment::{
    export_results, import_json, parse_config, run_experiment, to_csv_string, ExportFormat,
    CSV_COLUMNS,
};

#[test]
fn configured_run_writes_stable_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("res.csv");
    let text = format!(
        "sweep = primes:13\nalpha = 1/1\nL = 0.4\nsamples = 300\nworkers = 3\noutput = {}\n",
        out.display()
    );
    let config = parse_config(&text).unwrap();
    let report = run_experiment(&config).unwrap();
    assert_eq!(
        report.results.iter().map(|r| r.m).collect::<Vec<_>>(),
        vec![5, 65]
    );
    let first = fs::read(&out).unwrap();
    run_experiment(&config).unwrap();
    assert_eq!(fs::read(&out).unwrap(), first);

    let csv = String::from_utf8(first).unwrap();
    let mut rows = csv.lines();
    assert_eq!(rows.next().unwrap(), CSV_COLUMNS.join(","));
    for (row, r) in rows.zip(&report.results) {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells[0].parse::<u64>().unwrap(), r.m);
        assert_eq!(cells[6].parse::<f64>().unwrap(), r.var_z);
        assert_eq!(
            cells[9].parse::<f64>().unwrap(),
            r.var_z / r.bound_values.values().next().unwrap()
        );
    }
}

#[test]
fn json_export_round_trips_and_matches_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let config =
        parse_config("m = 25, 125\nalpha = theta:0.4\nL = 0.6\nsamples = 150\nseed_base = 77\n")
            .unwrap();
    let report = run_experiment(&config).unwrap();
    let path = dir.path().join("r.json");
    export_results(&report.results, ExportFormat::Json, &path).unwrap();
    let back = import_json(&path).unwrap();
    assert_eq!(back, report.results);
    assert_eq!(
        to_csv_string(&back).unwrap(),
        to_csv_string(&report.results).unwrap()
    );
    assert!(back
        .iter()
        .all(|r| r.seed_base == 77 && r.z_counts.len() == 150));
}
