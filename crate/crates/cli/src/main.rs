use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let args = sagnac_cli::cli::Cli::parse();
    match sagnac_cli::cli::run(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
