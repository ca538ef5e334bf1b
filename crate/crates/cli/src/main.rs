//! `qcoh`: coherence measures, roof certification and transformation checks
//! for single qubits.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 reproduction failure.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use qubit_coherence::io::{
    curve_to_csv, ensemble_to_json, parse_state, roof_to_json, value_json, verdict_to_json,
    ParsedState,
};
use qubit_coherence::reproduce::run_all;
use qubit_coherence::{
    coherence_rank, direct_sum_feasible, qubit_transform_verdict, rank_split, roof_minimize, Error,
    MeasureSpec, RoofConfig,
};

#[derive(Parser, Debug)]
#[command(
    name = "qcoh",
    version,
    about = "Convex-roof coherence measures of single qubits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form value of a measure.
    Eval {
        /// concurrence | formation | geometric | cmax | cmu:<mu> | rank
        measure: String,
        /// State as JSON, or @path to read it from a file.
        state: String,
    },
    /// Brute-force convex roof over ensemble decompositions.
    Roof {
        measure: String,
        state: String,
        /// Ensemble sizes, comma separated, each in 2..=4.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Coherence rank with its optimal pure-plus-incoherent split.
    Rank { state: String },
    /// Whether the source converts to the target by an incoherent operation.
    Feasible { source: String, target: String },
    /// Pure-state profile sampled on a uniform grid of the l1 coherence.
    Curve {
        measure: String,
        /// Number of grid points, at least 2.
        n: usize,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute every published constant and acceptance check.
    Reproduce {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the table as JSON.
        #[arg(long)]
        json: bool,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = match e {
            Error::NonConvexMeasure(id) => format!(
                "measure `{id}` is not continuous and convex in |c0 c1*|, so it has no closed form; \
                 run `qcoh roof {id} <state>` for an upper bound"
            ),
            _ => e.to_string(),
        };
        Self { code: 1, message }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Eval { measure, state } => {
            let spec = MeasureSpec::from_token(&measure)?;
            let value = match read_state(&state)? {
                ParsedState::Mixed(rho) => spec.evaluate(&rho)?,
                ParsedState::Pure(phi) => spec.eval_pure(&phi),
                ParsedState::DirectSum(d) => d.additive(|phi| spec.eval_pure(phi)),
            };
            print_json(&value_json(value))
        }
        Command::Roof {
            measure,
            state,
            sizes,
            restarts,
            iters,
            tol,
            seed,
        } => {
            let spec = MeasureSpec::from_token(&measure)?;
            let rho = qubit(&read_state(&state)?)?;
            let config = RoofConfig {
                ensemble_sizes: sizes,
                restarts,
                max_iters: iters,
                tol,
                seed,
            };
            let result = roof_minimize(&spec, &rho, &config)?;
            print_json(&roof_to_json(&result))
        }
        Command::Rank { state } => {
            let rho = qubit(&read_state(&state)?)?;
            let witness = rank_split(&rho);
            print_json(&json!({
                "value": value_json(coherence_rank(&rho))["value"],
                "witness": ensemble_to_json(&witness.ensemble()),
            }))
        }
        Command::Feasible { source, target } => {
            let verdict = match (read_state(&source)?, read_state(&target)?) {
                (ParsedState::DirectSum(s), ParsedState::DirectSum(t)) => {
                    verdict_to_json(&direct_sum_feasible(&s, &t))
                }
                (s, t) => match (s.as_qubit(), t.as_qubit()) {
                    (Some(s), Some(t)) => verdict_to_json(&qubit_transform_verdict(&s, &t)),
                    _ => {
                        return Err(input_error(format!(
                            "source is {} but target is {}; both must be qubit states or both direct sums",
                            s.kind(),
                            t.kind()
                        )))
                    }
                },
            };
            print_json(&verdict)
        }
        Command::Curve { measure, n, out } => {
            let spec = MeasureSpec::from_token(&measure)?;
            if n < 2 {
                return Err(input_error(format!(
                    "curve needs at least 2 points, got {n}"
                )));
            }
            let csv = curve_to_csv(&spec.curve_sample(n)?);
            match out {
                Some(path) => fs::write(&path, csv)
                    .map_err(|e| input_error(format!("cannot write {}: {e}", path.display()))),
                None => write_stdout(&csv),
            }
        }
        Command::Reproduce { seed, json } => {
            let report = run_all(seed);
            if json {
                print_json(&report.to_json())?;
            } else {
                write_stdout(&report.table())?;
            }
            if report.all_pass() {
                Ok(())
            } else {
                let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
                Err(Failure {
                    code: 2,
                    message: format!("failing checks: {}", names.join(", ")),
                })
            }
        }
    }
}

/// JSON text, or the contents of the file named after a leading `@`.
fn read_state(arg: &str) -> Result<ParsedState, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => {
            fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {path}: {e}")))?
        }
        None => arg.to_owned(),
    };
    Ok(parse_state(&text)?)
}

fn qubit(state: &ParsedState) -> Result<qubit_coherence::QubitState, Failure> {
    state
        .as_qubit()
        .ok_or_else(|| input_error(format!("expected a qubit state, got a {}", state.kind())))
}

fn print_json(value: &Value) -> Result<(), Failure> {
    write_stdout(&format!("{value}\n"))
}

fn write_stdout(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|()| out.flush())
        .map_err(|e| input_error(format!("cannot write output: {e}")))
}
