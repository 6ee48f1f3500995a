//! Command-line front end for `ringphase`.

pub mod args;
pub mod commands;
pub mod emit;
pub mod error;
pub mod manifest;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use crate::args::{Cli, Command, Format};
use crate::error::{CliError, CliResult, EXIT_OK, EXIT_USAGE};

/// Parse `argv`, run the command, and return the process exit code.
/// Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "ringphase {}: {e}", cli.command.name());
            e.exit_code()
        }
    }
}

fn dispatch(command: &Command, out: &mut dyn Write) -> CliResult<()> {
    let summary = match command {
        Command::State(a) | Command::Wigner(a) | Command::Weyl(a) | Command::Marginals(a) | Command::Evolve(a) => {
            commands::execute(command.name(), a)?
        }
        Command::Replay(r) => commands::replay(r)?,
        Command::Verify(v) => {
            let report = verify::run_suite(&verify::Settings::from_args(v)?)?;
            let text = match v.format {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                Format::Csv => report.render_text(),
            };
            out.write_all(text.as_bytes()).map_err(CliError::io("stdout"))?;
            return if report.passed() { Ok(()) } else { Err(CliError::Verification(report.failures())) };
        }
    };
    for f in summary.files.iter().chain([&summary.manifest]) {
        writeln!(out, "wrote {}", f.display()).map_err(CliError::io("stdout"))?;
    }
    Ok(())
}
