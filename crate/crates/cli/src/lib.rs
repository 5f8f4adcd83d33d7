//! Command-line front end for `thetagraph-core`.
//!
//! Subcommands: `predict`, `enumerate`, `verify`, `export-dot`. Exit codes
//! are listed in [`error::exit`].

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;

pub use args::{Cli, Command};
pub use config::RunConfig;
pub use error::CliError;
pub use report::Report;

/// Runs one parsed command and writes its output.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Predict(c) => {
            let cfg = c.config()?;
            let r = commands::predict(&cfg)?;
            commands::emit(&cfg, &commands::render_report(&cfg, &r)?)
        }
        Command::Enumerate(c) => {
            let cfg = c.config()?;
            let r = commands::enumerate(&cfg)?;
            commands::emit(&cfg, &commands::render_report(&cfg, &r)?)
        }
        Command::Verify(c) => {
            let cfg = c.config()?;
            let r = commands::verify(&cfg)?;
            commands::emit(&cfg, &commands::render_verify(&cfg, &r)?)?;
            if r.passed() {
                Ok(())
            } else {
                Err(CliError::Mismatch(format!(
                    "prediction and enumeration differ for n = {}",
                    r.n
                )))
            }
        }
        Command::ExportDot(c) => {
            let cfg = c.config()?;
            let docs = commands::export_dot(&cfg)?;
            commands::emit_dot(&cfg, &docs).map(|_| ())
        }
    }
}
