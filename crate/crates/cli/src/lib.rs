//! Batch command-line front end for the `xdarboux` engine: coefficient
//! tables, grid evaluation, identity verification, quadrature norms,
//! factorization reports and certified zeros.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
//! 3 numerical non-convergence.

pub mod args;
pub mod commands;
pub mod error;
pub mod family;
pub mod output;

use std::ffi::OsString;

use clap::Parser;

pub use args::{Cli, Command, Format, Variant};
pub use commands::{Completed, PolynomialRecord, Table};
pub use error::{CliError, CliResult};
pub use family::{FamilyRecord, JobFamily};

/// Runs a parsed command without writing anything.
pub fn execute(cli: &Cli) -> CliResult<Completed> {
    match &cli.command {
        Command::Table(a) => commands::table(a),
        Command::Eval(a) => commands::eval(a),
        Command::Verify(a) => commands::verify(a),
        Command::Norms(a) => commands::norms(a),
        Command::Factorize(a) => commands::factorize_cmd(a),
        Command::Zeros(a) => commands::zeros(a),
    }
}

fn out_path(cli: &Cli) -> Option<&std::path::Path> {
    let out = match &cli.command {
        Command::Table(a) => &a.output,
        Command::Eval(a) => &a.output,
        Command::Verify(a) => &a.output,
        Command::Norms(a) => &a.output,
        Command::Factorize(a) => &a.output,
        Command::Zeros(a) => &a.output,
    };
    out.out.as_deref()
}

/// Parses `args`, runs the command, writes its output and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let done = match execute(&cli) {
        Ok(done) => done,
        Err(e) => {
            eprintln!("xdarboux: {e}");
            return e.exit_code();
        }
    };
    if let Err(e) = output::emit(out_path(&cli), &done.body) {
        eprintln!("xdarboux: {e}");
        return e.exit_code();
    }
    match done.failure {
        Some(e) => {
            eprintln!("xdarboux: {e}");
            e.exit_code()
        }
        None => 0,
    }
}
