//! Command-line surface for the exact resonance workbench.
//!
//! Exit codes: 0 success, 2 mathematical cross-check failure, 64 parse
//! error (files or arguments), 65 size guard exceeded. Stdout is
//! byte-identical for identical inputs and flags; timing goes to stderr.
//! The RESONANCE_THREADS environment variable caps the worker count.

mod commands;
mod failure;
mod instance;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use resonance_core::modular::RankMode;

use commands::RunCtx;
use report::Format;

#[derive(Parser)]
#[command(name = "resonance", version, about = "Exact Koszul modules, resonance schemes, and Chen-rank formulas")]
struct Cli {
    /// Emit JSON instead of the human table
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV instead of the human table
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct ModeArgs {
    /// Full exact elimination everywhere (slow, no primes)
    #[arg(long, conflicts_with = "modular")]
    exact: bool,
    /// Two-prime agreement with exact fallback, skipping minor verification
    #[arg(long)]
    modular: bool,
    /// Override the desk-scale size guards
    #[arg(long)]
    force: bool,
}

impl ModeArgs {
    fn mode(&self) -> RankMode {
        if self.exact {
            RankMode::Exact
        } else if self.modular {
            RankMode::Modular
        } else {
            RankMode::Certified
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Hilbert table of dim W_q computed by both routes
    Hilbert {
        /// Instance JSON file
        #[arg(long)]
        input: String,
        /// Largest degree to tabulate
        #[arg(long)]
        qmax: usize,
        #[command(flatten)]
        mode: ModeArgs,
        /// Check file-supplied components for resonance membership at load
        #[arg(long)]
        validate: bool,
    },
    /// Isotropy, separability, and strong isotropy of one component
    Check {
        #[arg(long)]
        input: String,
        /// Component basis: vectors split by ';', entries by ','
        #[arg(long)]
        component: String,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        validate: bool,
    },
    /// Graph layer: components, flags, Hilbert rows, Theta cross-check
    Raag {
        /// Graph JSON file
        #[arg(long)]
        graph: String,
        #[arg(long)]
        qmax: usize,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Annihilator slices, optional Fitting generators and reducedness window
    Ann {
        #[arg(long)]
        input: String,
        /// Largest annihilator degree
        #[arg(long)]
        dmax: usize,
        /// Also expand the maximal minors of the presentation
        #[arg(long)]
        fitting: bool,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        validate: bool,
    },
    /// Exact enumerative identity sweeps
    Identities {
        /// Largest genus to sweep
        #[arg(long)]
        gmax: u64,
    },
}

fn worker_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("RESONANCE_THREADS") {
        if let Ok(k) = v.trim().parse::<usize>() {
            if k > 0 {
                builder = builder.num_threads(k);
            }
        }
    }
    builder.build().expect("worker pool")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Human
    };
    let pool = worker_pool();
    let started = Instant::now();
    let result = match &cli.cmd {
        Cmd::Hilbert {
            input,
            qmax,
            mode,
            validate,
        } => {
            let ctx = RunCtx {
                mode: mode.mode(),
                force: mode.force,
                validate: *validate,
                pool: &pool,
            };
            commands::cmd_hilbert(&ctx, input, *qmax)
        }
        Cmd::Check {
            input,
            component,
            mode,
            validate,
        } => {
            let ctx = RunCtx {
                mode: mode.mode(),
                force: mode.force,
                validate: *validate,
                pool: &pool,
            };
            commands::cmd_check(&ctx, input, component)
        }
        Cmd::Raag { graph, qmax, mode } => {
            let ctx = RunCtx {
                mode: mode.mode(),
                force: mode.force,
                validate: false,
                pool: &pool,
            };
            commands::cmd_raag(&ctx, graph, *qmax)
        }
        Cmd::Ann {
            input,
            dmax,
            fitting,
            mode,
            validate,
        } => {
            let ctx = RunCtx {
                mode: mode.mode(),
                force: mode.force,
                validate: *validate,
                pool: &pool,
            };
            commands::cmd_ann(&ctx, input, *dmax, *fitting)
        }
        Cmd::Identities { gmax } => {
            let ctx = RunCtx {
                mode: RankMode::Certified,
                force: false,
                validate: false,
                pool: &pool,
            };
            commands::cmd_identities(&ctx, *gmax)
        }
    };
    let elapsed = started.elapsed();
    match result {
        Ok(report) => {
            print!("{}", report.render(format));
            eprintln!("elapsed: {:.3}s", elapsed.as_secs_f64());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            eprintln!("elapsed: {:.3}s", elapsed.as_secs_f64());
            ExitCode::from(f.exit_code())
        }
    }
}
