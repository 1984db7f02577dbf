//! Command-line front end: `rule`, `metrics`, `sweep`, `validate`, `corr`.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 validation
//! z-score failure. Verbosity is controlled by the FAS_SECRECY_LOG
//! environment variable.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fas_secrecy::config::{load_config_str, LoadedConfig};
use fas_secrecy::error::Error;
use fas_secrecy::metrics::{asc, asc_asymptotic, see, sop, sop_oracle, Channel};
use fas_secrecy::quadrature::gauss_laguerre_rule;
use fas_secrecy::sweep::{fmt17, rows_to_csv, run_sweep, validate, CSV_SCHEMA};

#[derive(Parser)]
#[command(
    name = "fas-secrecy",
    version,
    about = "Analytical secrecy metrics for fluid-antenna wiretap channels"
)]
struct Cli {
    /// Warn on unknown config keys instead of failing.
    #[arg(long, global = true)]
    lenient: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a Gauss-Laguerre rule for inspection.
    Rule {
        #[arg(long)]
        order: usize,
    },
    /// Compute single-point ASC/SOP/SEE for a config.
    Metrics {
        #[arg(long)]
        config: PathBuf,
        /// Stieltjes cells for the SOP oracle.
        #[arg(long, default_value_t = 2048)]
        oracle_points: usize,
    },
    /// Run the configured sweep and write a CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Concurrent sweep points; output is identical for any value.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 2048)]
        oracle_points: usize,
    },
    /// Cross-validate the analytics against Monte Carlo simulation.
    Validate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        trials: usize,
        /// Overrides the config seed; one of the two must be present.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Dump a node's port correlation matrix as CSV.
    Corr {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Which node's matrix to dump: bob or eve.
        #[arg(long, default_value = "bob")]
        node: String,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(
        env_logger::Env::default().filter_or("FAS_SECRECY_LOG", "warn"),
    )
    .init();

    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own message (including --help/--version).
            let code = if e.exit_code() == 0 { 0 } else { 1 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            classify(&e)
        }
    }
}

/// Map errors onto the exit-code contract: configuration and precondition
/// problems are usage errors (1), everything else is a numerical failure (2).
fn classify(e: &Error) -> ExitCode {
    match e {
        Error::Config { .. }
        | Error::InvalidParameter(_)
        | Error::InvalidOrder(_)
        | Error::InvalidGrid(_)
        | Error::Io(_) => ExitCode::from(1),
        _ => ExitCode::from(2),
    }
}

fn load(path: &PathBuf, lenient: bool) -> Result<LoadedConfig, Error> {
    let text = std::fs::read_to_string(path)?;
    let cfg = load_config_str(&text, !lenient)?;
    for w in &cfg.warnings {
        eprintln!("warning: {w}");
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Rule { order } => {
            let rule = gauss_laguerre_rule(order)?;
            println!("{CSV_SCHEMA} rule order={order}");
            println!("index,node,weight");
            for (i, (&x, &w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
                println!("{},{},{}", i, fmt17(x), fmt17(w));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Metrics {
            config,
            oracle_points,
        } => {
            let cfg = load(&config, cli.lenient)?;
            let s = &cfg.scenario;
            let a = asc(s)?;
            let asy = asc_asymptotic(s)?;
            let p = sop(s)?;
            let o = sop_oracle(s, oracle_points)?;
            let en = see(s)?;
            println!("{CSV_SCHEMA} metrics");
            println!("asc={}", fmt17(a.value));
            println!("asc_err={}", fmt17(a.estimator_error));
            println!("asc_asymptotic={}", fmt17(asy.value));
            println!("sop_paper={}", fmt17(p.value));
            println!("sop_oracle={}", fmt17(o.value));
            println!("sop_gap={}", fmt17(p.value - o.value));
            println!("see={}", fmt17(en.value));
            println!("kappa={}", fmt17(s.kappa()));
            println!(
                "jitter_applied={}",
                fmt17(
                    s.bob
                        .channel
                        .jitter_applied()
                        .max(s.eve.channel.jitter_applied())
                )
            );
            let cap = a.diagnostics.mvn_cap_hit
                || asy.diagnostics.mvn_cap_hit
                || p.diagnostics.mvn_cap_hit
                || o.diagnostics.mvn_cap_hit;
            println!("mvn_flag={}", u8::from(cap));
            Ok(if cap {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Cmd::Sweep {
            config,
            out,
            jobs,
            oracle_points,
        } => {
            let cfg = load(&config, cli.lenient)?;
            let rows = run_sweep(&cfg, jobs, oracle_points)?;
            std::fs::write(&out, rows_to_csv(&rows))?;
            let failures = rows.iter().filter(|r| r.error.is_some()).count();
            if failures > 0 {
                eprintln!("{failures} sweep point(s) failed; see the error column");
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Validate {
            config,
            trials,
            seed,
        } => {
            let cfg = load(&config, cli.lenient)?;
            let seed = match seed {
                Some(s) => s,
                None if cfg.seed_explicit => cfg.scenario.seed,
                None => {
                    return Err(Error::InvalidParameter(
                        "validate needs a seed: set `seed` in the config or pass --seed".into(),
                    ))
                }
            };
            let report = validate(&cfg, trials, seed)?;
            print!("{}", report.to_text());
            if report.mvn_cap_hit {
                eprintln!("estimator sample cap exceeded; analytical values are suspect");
                return Ok(ExitCode::from(2));
            }
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Cmd::Corr { config, out, node } => {
            let cfg = load(&config, cli.lenient)?;
            let params = match node.as_str() {
                "bob" => &cfg.scenario.bob,
                "eve" => &cfg.scenario.eve,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown node \"{other}\" (expected bob or eve)"
                    )))
                }
            };
            let corr = match &params.channel {
                Channel::Fas { corr, .. } => corr,
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "node {node} has no port correlation matrix (channel is not fas)"
                    )))
                }
            };
            let mut text = format!(
                "{CSV_SCHEMA} corr node={node} dim={} jitter={}\n",
                corr.dim(),
                fmt17(corr.jitter_applied())
            );
            for i in 0..corr.dim() {
                let row: Vec<String> = (0..corr.dim())
                    .map(|j| fmt17(corr.entries()[(i, j)]))
                    .collect();
                text.push_str(&row.join(","));
                text.push('\n');
            }
            std::fs::write(&out, text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
