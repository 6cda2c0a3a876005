use std::process::ExitCode;

use clap::Parser;
use egs_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match egs_cli::execute(&cli).and_then(|out| egs_cli::deliver(&out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
