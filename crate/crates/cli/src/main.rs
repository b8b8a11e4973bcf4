use std::process::ExitCode;

use clap::Parser;
use entangle_cli::{execute, Cli, Scenario};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = Scenario::from_cli(cli).and_then(|s| execute(&s, std::io::stdout().lock()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("entangle: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
