//! Configuration-driven front end for the EPRB/CHSH laboratory: quantum
//! computations, hidden-variable simulations, sweeps, angle optimization and
//! the claims audit, with CSV or JSON output.

pub mod audit;
pub mod config;
pub mod error;
pub mod output;
pub mod runner;

use error::{CliError, EXIT_IO};
use std::ffi::OsString;

/// Full CLI entry point; returns the process exit code.
///
/// Exit codes: 0 success, 2 usage error, 3 I/O error, 4 invariant violation
/// detected during an audit.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match config::parse_config(args) {
        Ok(cfg) => cfg,
        Err(CliError::Help(text)) => {
            print!("{text}");
            return 0;
        }
        Err(e) => {
            eprintln!("chsh-lab: {e}");
            return e.exit_code();
        }
    };
    match runner::run(&cfg) {
        Ok(outcome) => {
            let rendered = outcome.output.render(cfg.format);
            match &cfg.output_path {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered.as_bytes()) {
                        eprintln!("chsh-lab: cannot write {}: {e}", path.display());
                        return EXIT_IO;
                    }
                }
                None => print!("{rendered}"),
            }
            outcome.exit
        }
        Err(e) => {
            eprintln!("chsh-lab: {e}");
            e.exit_code()
        }
    }
}
