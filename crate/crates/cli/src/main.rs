use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use kgring_cli::{execute, render, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("kgring: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let loaded = cli.load()?;
    let outcome = execute(cli.job, &loaded)?;
    let bytes = render(cli.job, &loaded, &outcome)?;
    match &loaded.config.output {
        Some(path) => std::fs::write(path, &bytes)?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    match &outcome.status {
        kgring_cli::Status::Success => {}
        kgring_cli::Status::Failed(rows) => {
            eprintln!("kgring: {} row(s) failed", rows.len());
            for r in rows {
                eprintln!("  {r}");
            }
        }
        kgring_cli::Status::Aborted(msg) => eprintln!("kgring: solver failure: {msg}"),
    }
    Ok(outcome.status.exit_code())
}
