//! Library backing the `trapzopt` binary; the commands are exposed here so
//! integration tests can run them in-process.

// Negated float comparisons are deliberate: they reject NaN along with
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use clap::Parser;

pub use commands::{cmd_optimize, cmd_profile, cmd_simulate, cmd_sweep};
pub use error::{CliError, CliResult, EXIT_DOMAIN, EXIT_USAGE};

/// Parses `argv` and dispatches. Returns the process exit code: 0 success,
/// 2 domain infeasibility, 64 usage or config errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    EXIT_USAGE
                }
            };
        }
    };

    let result = match &cli.command {
        args::Command::Profile(p) => cmd_profile(p.v, p.a, p.duration, p.rate, &p.out),
        args::Command::Simulate(r) => cmd_simulate(&r.config, r.out.as_deref()),
        args::Command::Sweep(r) => cmd_sweep(&r.config, r.out.as_deref()),
        args::Command::Optimize(r) => cmd_optimize(&r.config, r.out.as_deref(), r.seed),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
