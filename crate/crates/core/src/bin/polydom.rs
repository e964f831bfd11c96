//! Command-line front end.
//!
//! Exit codes form a scripting contract: 0 = dominates, 1 = does not
//! dominate, 2 = unknown, 3 = parse/validation error, 4 = usage error.

use clap::{Args, Parser, Subcommand};
use polydom::domination::{decide_matrix, lsc_hypothesis_check};
use polydom::probe::{default_ray_schedule, ratio_estimate, ray_oscillation_probe, ProbeParams};
use polydom::report::{
    domination_text, domination_value, lsc_text, lsc_value, pinv_text, pinv_value, probe_text,
    probe_value, JsonReport,
};
use polydom::scalar_dom::{DecisionConfig, Mode, Outcome};
use polydom::{parse_matrix_str, parse_scalar_str, LscStatus, MatrixPoly};
use serde_json::json;
use std::process::exit;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "polydom",
    about = "Decides L2 domination between constant-coefficient matrix differential operators",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for every randomized component (refutation sweep, probes).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Random weight/coefficient draws in the refutation sweep.
    #[arg(long, global = true, default_value_t = 64)]
    max_random_weights: usize,

    /// Fix the number of variables instead of inferring it.
    #[arg(long, global = true)]
    dim: Option<usize>,
}

#[derive(Args)]
struct PairArgs {
    /// Symbol of P, e.g. "[x1^2+x2^2, x1; x2, 0]" or @file.
    p: String,
    /// Symbol of Q, e.g. "[1, 0; 0, 1]" or @file.
    q: String,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact pseudoinverse representation P^+ = A / Delta.
    Pinv {
        /// Matrix expression or @file.
        p: String,
    },
    /// Decide whether P dominates Q.
    Dominates(PairArgs),
    /// Decide whether P compactly dominates Q.
    CompactlyDominates(PairArgs),
    /// Print the squared weight function of a scalar polynomial.
    Tilde {
        /// Scalar expression or @file.
        p: String,
    },
    /// Check that P compactly dominates all of its derivative operators.
    LscCheck {
        /// Matrix expression or @file.
        p: String,
    },
    /// Numerical L2-ratio probe on a periodic grid (empirical only).
    Probe {
        #[command(flatten)]
        pair: PairArgs,
        /// Number of random test functions.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Samples per axis (power of two).
        #[arg(long = "grid", default_value_t = 128)]
        grid: usize,
        /// Oscillation ray direction, e.g. --ray 1,0. Switches to the
        /// ray probe with the geometric schedule t = 4, 8, ..., 64.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        ray: Option<Vec<f64>>,
        /// Write per-trial ratios as CSV to this path.
        #[arg(long)]
        csv: Option<String>,
    },
}

fn load_input(arg: &str) -> Result<String, String> {
    if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {}", path, e))
    } else {
        Ok(arg.to_string())
    }
}

fn parse_matrix_arg(arg: &str, dim: Option<usize>) -> Result<MatrixPoly, String> {
    let text = load_input(arg)?;
    parse_matrix_str(&text, dim).map_err(|e| e.to_string())
}

fn fail(code: i32, msg: &str) -> ! {
    eprintln!("error: {}", msg);
    exit(code);
}

fn outcome_exit(o: Outcome) -> i32 {
    match o {
        Outcome::Dominates => 0,
        Outcome::NotDominates => 1,
        Outcome::Unknown => 2,
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            eprint!("{}", e);
            exit(4);
        }
        Err(e) => {
            // --help / --version
            print!("{}", e);
            exit(0);
        }
    };
    let started = Instant::now();
    let config = DecisionConfig {
        seed: cli.seed,
        random_weight_draws: cli.max_random_weights,
        ..DecisionConfig::default()
    };

    match &cli.command {
        Command::Pinv { p } => {
            let pm = parse_matrix_arg(p, cli.dim).unwrap_or_else(|e| fail(3, &e));
            let rep = pm.pseudoinverse().unwrap_or_else(|e| fail(3, &e.to_string()));
            if cli.json {
                let jr = JsonReport::new(
                    "pinv",
                    json!({"p": pm.to_canonical_string()}),
                    pinv_value(&pm, &rep),
                    started.elapsed().as_millis(),
                    cli.seed,
                );
                println!("{}", jr.to_json_string());
            } else {
                print!("{}", pinv_text(&pm, &rep));
            }
            exit(0);
        }
        Command::Tilde { p } => {
            let text = load_input(p).unwrap_or_else(|e| fail(3, &e));
            let sp = parse_scalar_str(&text, cli.dim).unwrap_or_else(|e| fail(3, &e.to_string()));
            let t2 = sp.tilde_squared();
            if cli.json {
                let jr = JsonReport::new(
                    "tilde",
                    json!({"p": sp.to_canonical_string()}),
                    json!({"tilde_squared": t2.to_canonical_string()}),
                    started.elapsed().as_millis(),
                    cli.seed,
                );
                println!("{}", jr.to_json_string());
            } else {
                println!("p       = {}", sp.to_canonical_string());
                println!("p~^2    = {}", t2.to_canonical_string());
            }
            exit(0);
        }
        Command::Dominates(pair) | Command::CompactlyDominates(pair) => {
            let mode = match &cli.command {
                Command::Dominates(_) => Mode::Strict,
                _ => Mode::Compact,
            };
            let pm = parse_matrix_arg(&pair.p, cli.dim).unwrap_or_else(|e| fail(3, &e));
            let qm = parse_matrix_arg(&pair.q, cli.dim).unwrap_or_else(|e| fail(3, &e));
            let d = pm.dim().max(qm.dim());
            let (pm, qm) = (pm.promote_dim(d), qm.promote_dim(d));
            let report = decide_matrix(&pm, &qm, mode, &config, None)
                .unwrap_or_else(|e| fail(3, &e.to_string()));
            if cli.json {
                let jr = JsonReport::new(
                    if mode == Mode::Strict {
                        "dominates"
                    } else {
                        "compactly-dominates"
                    },
                    json!({
                        "p": pm.to_canonical_string(),
                        "q": qm.to_canonical_string(),
                    }),
                    domination_value(&report),
                    started.elapsed().as_millis(),
                    cli.seed,
                );
                println!("{}", jr.to_json_string());
            } else {
                print!("{}", domination_text(&pm, &qm, &report));
            }
            exit(outcome_exit(report.overall));
        }
        Command::LscCheck { p } => {
            let pm = parse_matrix_arg(p, cli.dim).unwrap_or_else(|e| fail(3, &e));
            let report =
                lsc_hypothesis_check(&pm, &config).unwrap_or_else(|e| fail(3, &e.to_string()));
            if cli.json {
                let jr = JsonReport::new(
                    "lsc-check",
                    json!({"p": pm.to_canonical_string()}),
                    lsc_value(&report),
                    started.elapsed().as_millis(),
                    cli.seed,
                );
                println!("{}", jr.to_json_string());
            } else {
                print!("{}", lsc_text(&pm, &report));
            }
            exit(match report.status {
                LscStatus::Satisfied => 0,
                LscStatus::Fails => 1,
                LscStatus::Unknown => 2,
            });
        }
        Command::Probe {
            pair,
            trials,
            grid,
            ray,
            csv,
        } => {
            let pm = parse_matrix_arg(&pair.p, cli.dim).unwrap_or_else(|e| fail(3, &e));
            let qm = parse_matrix_arg(&pair.q, cli.dim).unwrap_or_else(|e| fail(3, &e));
            let d = pm.dim().max(qm.dim());
            let (pm, qm) = (pm.promote_dim(d), qm.promote_dim(d));
            let params = ProbeParams {
                n: *grid,
                ..ProbeParams::default()
            };
            let report = match ray {
                Some(v) => ray_oscillation_probe(
                    &pm,
                    &qm,
                    v,
                    &default_ray_schedule(),
                    params,
                    cli.seed,
                ),
                None => ratio_estimate(&pm, &qm, *trials, params, cli.seed),
            }
            .unwrap_or_else(|e| fail(3, &e.to_string()));
            if let Some(path) = csv {
                std::fs::write(path, report.to_csv())
                    .unwrap_or_else(|e| fail(3, &format!("cannot write csv: {}", e)));
            }
            if cli.json {
                let jr = JsonReport::new(
                    "probe",
                    json!({
                        "p": pm.to_canonical_string(),
                        "q": qm.to_canonical_string(),
                    }),
                    probe_value(&report),
                    started.elapsed().as_millis(),
                    cli.seed,
                );
                println!("{}", jr.to_json_string());
            } else {
                print!("{}", probe_text(&report));
            }
            exit(0);
        }
    }
}
