//! `tensorval` — exact and Monte Carlo verification of integral-geometric
//! identities for Minkowski tensors.
//!
//! Exit codes: 0 — all checks passed; 1 — at least one verification failed;
//! 2 — configuration or usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tensorval::harness::{preset_config, run_config, Config, RunDefaults};

#[derive(Parser)]
#[command(name = "tensorval", version, about = "verification toolkit for Minkowski tensor identities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the experiments described by a JSON config file.
    Run {
        /// Path to the experiment configuration.
        #[arg(long)]
        config: PathBuf,
        /// Write the JSON report here (defaults to stdout only).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the base RNG seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the default per-experiment sample count.
        #[arg(long)]
        samples: Option<u64>,
        /// Worker threads (0 = automatic); also settable via TENSORVAL_WORKERS.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Run a built-in validation suite.
    Validate {
        /// Suite to run.
        #[arg(long, value_parser = ["quick", "full"])]
        preset: String,
        /// Write the JSON report here (defaults to stdout only).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

fn env_workers() -> Option<usize> {
    std::env::var("TENSORVAL_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
}

fn execute(
    cfg: &Config,
    out: Option<PathBuf>,
    seed: Option<u64>,
    samples: Option<u64>,
    workers: Option<usize>,
) -> ExitCode {
    let mut d = RunDefaults::from_config(cfg);
    if let Some(s) = seed {
        d.seed = s;
    }
    if let Some(s) = samples {
        d.samples = s;
    }
    if let Some(w) = workers.or_else(env_workers) {
        d.workers = w;
    }
    let report = match run_config(cfg, &d) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for r in &report.results {
        let status = if r.pass { "pass" } else { "FAIL" };
        println!("[{status}] {} ({})", r.name, r.kind);
    }
    let json = report.to_json();
    if let Some(path) = out {
        if let Err(e) = std::fs::write(&path, &json) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else {
        println!("{json}");
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Run {
            config,
            out,
            seed,
            samples,
            workers,
        } => match Config::from_path(&config) {
            Ok(cfg) => execute(&cfg, out, seed, samples, workers),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Cmd::Validate {
            preset,
            out,
            seed,
            samples,
            workers,
        } => match preset_config(&preset) {
            Some(cfg) => execute(&cfg, out, seed, samples, workers),
            None => {
                eprintln!("error: unknown preset '{preset}'");
                ExitCode::from(2)
            }
        },
    }
}
