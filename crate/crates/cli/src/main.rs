use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use shellzeta_cli::{Cli, CliError};

fn run(cli: &Cli) -> Result<(), CliError> {
    let (text, config) = cli.command.execute()?;
    match &config.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("shellzeta: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
