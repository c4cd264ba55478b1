mod cli;

use clap::Parser;

fn main() -> std::process::ExitCode {
    match cli::main_with(cli::Cli::parse()) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::ExitCode::FAILURE
        }
    }
}
