use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use arw_core::analytics::{
    expected_intersections, gap_condition, second_moment_closed_form, variance_bound, BoundKind,
};
use arw_core::experiment::{parse_config, run_experiment, to_csv_string};
use arw_core::lattice::{
    arc_max_occupancy, census_rows, census_s, density_one_check, min_pair_sum, pair_set_a,
    range_decomposition, rational_pair_sum, third_root_arc,
};
use arw_core::wave::{count_nodal_intersections_with, sample_wave, CountOptions};
use arw_core::{ArwError, Direction, EnergyLevel, Segment};

const EXIT_RUNTIME: u8 = 1;
const EXIT_BAND: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Arithmetic random waves on the torus: lattice points, nodal counts and
/// variance bounds.
#[derive(Parser, Debug)]
#[command(name = "arw", version)]
struct Cli {
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lattice points on circles.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Random wave samples.
    #[command(subcommand)]
    Wave(WaveCmd),
    /// Closed-form predictions.
    #[command(subcommand)]
    Theory(TheoryCmd),
    /// Monte Carlo ensembles.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// List the lattice points of norm m.
    Enum {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        csv: bool,
    },
    /// Per-level statistics for every m <= X that is a sum of two squares.
    Census {
        #[arg(long = "X")]
        x: u64,
        #[arg(long)]
        csv: bool,
    },
    /// Maximal number of lattice points on an arc.
    Arcs {
        #[arg(long)]
        m: u64,
        /// Arc length; defaults to 0.999 m^(1/6).
        #[arg(long)]
        length: Option<f64>,
    },
    /// Pair sums over A_alpha.
    Pairsum {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        alpha: Direction,
        #[arg(long, requires = "c")]
        a: Option<f64>,
        #[arg(long, requires = "a")]
        c: Option<f64>,
    },
    /// Fraction of levels m <= X violating the gap condition.
    Density {
        #[arg(long = "X")]
        x: u64,
        #[arg(long)]
        epsilon: f64,
    },
}

#[derive(Subcommand, Debug)]
enum WaveCmd {
    /// Draw one wave and count its zeros on a segment.
    Sample(SampleArgs),
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long)]
    m: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    alpha: Direction,
    #[arg(long = "L")]
    length: f64,
    /// Segment start as `x,y`.
    #[arg(long, value_parser = parse_offset)]
    offset: Option<[f64; 2]>,
    #[arg(long, default_value_t = 16.0)]
    oversampling: f64,
}

#[derive(Subcommand, Debug)]
enum TheoryCmd {
    /// Expected count, variance bound shapes and second moment.
    Bounds {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        alpha: Direction,
        #[arg(long = "L")]
        length: f64,
        #[arg(long, default_value_t = 0.3)]
        epsilon: f64,
    },
}

#[derive(Subcommand, Debug)]
enum ExperimentCmd {
    /// Run the ensembles described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        csv: bool,
    },
}

fn parse_offset(s: &str) -> Result<[f64; 2], String> {
    let (x, y) = s.split_once(',').ok_or("expected `x,y`")?;
    let parse = |v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|_| format!("cannot parse `{v}`"))
    };
    Ok([parse(x)?, parse(y)?])
}

enum Output {
    Json {
        seed: Option<u64>,
        resolved_config: Value,
        result: Value,
    },
    Text(String),
}

struct Outcome {
    output: Output,
    band_failure: bool,
}

impl Outcome {
    fn json(
        seed: Option<u64>,
        resolved_config: Value,
        result: impl Serialize,
    ) -> Result<Self, ArwError> {
        let result = serde_json::to_value(result)?;
        Ok(Outcome {
            output: Output::Json {
                seed,
                resolved_config,
                result,
            },
            band_failure: false,
        })
    }

    fn text(s: String) -> Self {
        Outcome {
            output: Output::Text(s),
            band_failure: false,
        }
    }

    fn render(self) -> Result<String, ArwError> {
        Ok(match self.output {
            Output::Text(s) => s,
            Output::Json {
                seed,
                resolved_config,
                result,
            } => {
                let doc = json!({
                    "tool_version": env!("CARGO_PKG_VERSION"),
                    "seed": seed,
                    "resolved_config": resolved_config,
                    "result": result,
                });
                let mut s = serde_json::to_string_pretty(&doc)?;
                s.push('\n');
                s
            }
        })
    }
}

fn lattice(cmd: LatticeCmd) -> Result<Outcome, ArwError> {
    match cmd {
        LatticeCmd::Enum { m, csv } => {
            let level = EnergyLevel::new(m)?;
            if csv {
                let mut s = String::from("x,y\n");
                for p in level.points() {
                    s.push_str(&format!("{},{}\n", p.x, p.y));
                }
                return Ok(Outcome::text(s));
            }
            let points: Vec<[i64; 2]> = level.points().iter().map(|p| [p.x, p.y]).collect();
            Outcome::json(
                None,
                json!({ "m": m }),
                json!({
                    "m": m,
                    "N": level.n_points(),
                    "factorization": level.factorization(),
                    "points": points,
                }),
            )
        }
        LatticeCmd::Census { x, csv } => {
            let (count, ratio) = census_s(x)?;
            let rows = census_rows(x)?;
            if csv {
                let mut s = String::from("m,N,min_gap,arc_occ_third_root,arc_occ_fourth_root\n");
                for r in &rows {
                    s.push_str(&format!(
                        "{},{},{},{},{}\n",
                        r.m, r.n, r.min_gap, r.arc_occ_third_root, r.arc_occ_fourth_root
                    ));
                }
                return Ok(Outcome::text(s));
            }
            Outcome::json(
                None,
                json!({ "X": x }),
                json!({ "count": count, "landau_ratio": ratio, "rows": rows }),
            )
        }
        LatticeCmd::Arcs { m, length } => {
            let level = EnergyLevel::new(m)?;
            let arc = length.unwrap_or_else(|| third_root_arc(m));
            if !(arc >= 0.0 && arc.is_finite()) {
                return Err(ArwError::InvalidParameter {
                    name: "length",
                    reason: format!("{arc} is not a length"),
                });
            }
            let min_gap = if level.n_points() >= 2 {
                Some(level.min_pair_distance()?)
            } else {
                None
            };
            Outcome::json(
                None,
                json!({ "m": m, "length": arc }),
                json!({
                    "m": m,
                    "N": level.n_points(),
                    "length": arc,
                    "max_occupancy": arc_max_occupancy(&level, arc),
                    "min_pair_distance": min_gap,
                }),
            )
        }
        LatticeCmd::Pairsum { m, alpha, a, c } => {
            let level = EnergyLevel::new(m)?;
            let size = pair_set_a(&level, alpha)?.count();
            let rational = match alpha.integer_vector() {
                Some((q, p)) => Some(rational_pair_sum(&level, q, p)?),
                None => None,
            };
            let decomposition = match (a, c) {
                (Some(a), Some(c)) => Some(range_decomposition(&level, alpha, a, c)?),
                _ => None,
            };
            Outcome::json(
                None,
                json!({ "m": m, "alpha": alpha, "a": a, "c": c }),
                json!({
                    "m": m,
                    "N": level.n_points(),
                    "A_size": size,
                    "rational_pair_sum": rational,
                    "min_pair_sum": min_pair_sum(&level, alpha),
                    "decomposition": decomposition,
                }),
            )
        }
        LatticeCmd::Density { x, epsilon } => {
            let report = density_one_check(x, epsilon)?;
            Outcome::json(None, json!({ "X": x, "epsilon": epsilon }), report)
        }
    }
}

fn wave(cmd: WaveCmd) -> Result<Outcome, ArwError> {
    let WaveCmd::Sample(args) = cmd;
    let level = EnergyLevel::new(args.m)?;
    let offset = args.offset.unwrap_or([0.0, 0.0]);
    let segment = Segment::new(args.alpha, args.length)?.with_offset(offset);
    let sample = sample_wave(&level, args.seed)?;
    if !(args.oversampling >= 1.0 && args.oversampling.is_finite()) {
        return Err(ArwError::InvalidParameter {
            name: "oversampling",
            reason: format!("{} is below 1", args.oversampling),
        });
    }
    let options = CountOptions {
        oversampling: args.oversampling,
        ..CountOptions::default()
    };
    let nodal = count_nodal_intersections_with(&sample, &segment, options);
    let coefficients: Vec<Value> = sample
        .terms()
        .iter()
        .map(|t| json!({ "mu": [t.mu.x, t.mu.y], "re": t.coeff.re, "im": t.coeff.im }))
        .collect();
    Outcome::json(
        Some(args.seed),
        json!({
            "m": args.m,
            "alpha": args.alpha,
            "L": args.length,
            "offset": offset,
            "oversampling": args.oversampling,
        }),
        json!({
            "m": args.m,
            "N": level.n_points(),
            "count": nodal.count,
            "roots": nodal.roots,
            "step": nodal.step,
            "refined_cells": nodal.refined_cells,
            "unresolved_cells": nodal.unresolved_cells,
            "expected": expected_intersections(args.m, args.length)?,
            "coefficients": coefficients,
        }),
    )
}

fn theory(cmd: TheoryCmd) -> Result<Outcome, ArwError> {
    let TheoryCmd::Bounds {
        m,
        alpha,
        length,
        epsilon,
    } = cmd;
    let level = EnergyLevel::new(m)?;
    let mut bounds = Vec::new();
    for kind in BoundKind::ALL {
        if kind == BoundKind::RationalSlope && !alpha.is_rational() {
            continue;
        }
        bounds.push(variance_bound(&level, alpha, kind, epsilon)?);
    }
    let gap = if level.n_points() >= 2 {
        Some(gap_condition(&level, epsilon)?)
    } else {
        None
    };
    Outcome::json(
        None,
        json!({ "m": m, "alpha": alpha, "L": length, "epsilon": epsilon }),
        json!({
            "m": m,
            "N": level.n_points(),
            "expected_intersections": expected_intersections(m, length)?,
            "bounds": bounds,
            "gap": gap,
            "second_moment": second_moment_closed_form(&level, alpha, length),
        }),
    )
}

fn experiment(cmd: ExperimentCmd) -> Result<Outcome, ArwError> {
    let ExperimentCmd::Run { config, csv } = cmd;
    let text = fs::read_to_string(&config)?;
    let config = parse_config(&text)?.with_env_seed()?;
    let report = run_experiment(&config)?;
    let band_failure = !report.all_bands_pass();
    let mut outcome = if csv {
        Outcome::text(to_csv_string(&report.results)?)
    } else {
        Outcome::json(
            Some(config.seed_base),
            serde_json::to_value(&config)?,
            &report,
        )?
    };
    outcome.band_failure = band_failure;
    Ok(outcome)
}

fn run(cli: Cli) -> Result<Outcome, ArwError> {
    match cli.command {
        Command::Lattice(cmd) => lattice(cmd),
        Command::Wave(cmd) => wave(cmd),
        Command::Theory(cmd) => theory(cmd),
        Command::Experiment(cmd) => experiment(cmd),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let out = cli.out.clone();
    let result = run(cli).and_then(|o| {
        let band_failure = o.band_failure;
        Ok((o.render()?, band_failure))
    });
    match result {
        Ok((text, band_failure)) => {
            if let Some(path) = out {
                if let Err(e) = fs::write(&path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_RUNTIME);
                }
            } else {
                print!("{text}");
            }
            if band_failure {
                eprintln!("error: sample mean outside the acceptance band for at least one level");
                return ExitCode::from(EXIT_BAND);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_RUNTIME)
        }
    }
}
