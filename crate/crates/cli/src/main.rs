//! `rademacher` command-line tool. Reports go to standard output as JSON
//! (or its text rendering); errors are JSON objects with a distinct exit
//! code per kind.

mod args;
mod commands;
mod error;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Format};
use commands::Output;
use error::{CliError, Kind};

fn emit(format: Format, value: &serde_json::Value) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    match format {
        Format::Json | Format::Csv => writeln!(stdout, "{}", serde_json::to_string_pretty(value).expect("json"))?,
        Format::Text => write!(stdout, "{}", render::text(value))?,
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<ExitCode, CliError> {
    let output = commands::run(&cli.command)?;
    if cli.format == Format::Csv && !matches!(output, Output::Table(_)) {
        return Err(CliError::new(Kind::Usage, "--format csv applies to `enumerate` only"));
    }
    match output {
        Output::Json(v) => emit(cli.format, &v)?,
        Output::Failed(v) => {
            emit(cli.format, &v)?;
            return Ok(ExitCode::from(Kind::VerificationFailed.exit_code()));
        }
        Output::Table(table) => match cli.format {
            Format::Csv => table.write_csv(std::io::stdout().lock())?,
            _ => emit(cli.format, &table.to_json())?,
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn fail(err: &CliError) -> ExitCode {
    // A closed pipe must not turn into a panic here.
    let _ = writeln!(std::io::stdout().lock(), "{}", err.to_json());
    let _ = writeln!(std::io::stderr().lock(), "error: {}", err.message);
    ExitCode::from(err.kind.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let rendered = e.render().to_string();
            let message = rendered.trim_end().trim_start_matches("error: ");
            return fail(&CliError::new(Kind::Usage, message));
        }
    };
    execute(&cli).unwrap_or_else(|e| fail(&e))
}
