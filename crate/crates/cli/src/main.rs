use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use symlab_cli::{render, run, Cli, CliError};

fn write_output(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.command.output().out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|report| {
        let text = render(&report, cli.command.output().format);
        write_output(&cli, &text)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("symlab {}: error: {e}", cli.command.name());
            ExitCode::from(e.exit_code())
        }
    }
}
