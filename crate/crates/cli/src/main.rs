//! gapbench: CLI front end for the adiabatic PageRank gap laboratory.
//!
//! Exit codes are a stable contract: 0 success, 2 usage/configuration error,
//! 3 numerical failure (non-convergence, degenerate inputs at run time).

mod args;
mod commands;
mod output;
mod svg;

use clap::Parser;

fn main() {
    let cli = args::Cli::parse();
    if let Some(threads) = cli.threads {
        // A failed build means a pool already exists; keep going.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match commands::dispatch(&cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
