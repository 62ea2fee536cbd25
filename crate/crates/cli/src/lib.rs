//! Command-line front end for `cyclehom`: versioned JSON inputs,
//! deterministic JSON or CSV reports and a fixed exit-code contract.

pub mod app;
pub mod commands;
pub mod config;
pub mod error;
pub mod files;

use serde::Serialize;

use app::{Cli, Command, Format};
use config::Config;
use error::{CliError, Result};

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

/// Runs a parsed command line and returns what goes to stdout.
pub fn run(cli: &Cli) -> Result<String> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(threads) = cli.threads.or(config.threads) {
        if threads == 0 {
            return Err(CliError::Validation("threads must be positive".into()));
        }
        // A pool set up by an earlier call in the same process stays in place.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match &cli.command {
        Command::GroupHomology(args) => Ok(to_json(&commands::group_homology(args, &config)?)),
        Command::Galois(args) => Ok(to_json(&commands::galois(args, &config)?)),
        Command::Ss(args) => Ok(to_json(&commands::ss(args)?)),
        Command::Bredon(args) => {
            let report = commands::bredon(args)?;
            match args.format {
                Format::Json => Ok(to_json(&report)),
                Format::Csv => commands::bredon_csv(&report),
            }
        }
        Command::SeedCorpus(args) => Ok(to_json(&commands::seed_corpus(args)?)),
    }
}
