use std::process::ExitCode;

use clap::Parser;
use lantern_cli::{error_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code as u8)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(error_code(&err) as u8)
        }
    }
}
