mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::Failure;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("petweave: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Assertion(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Runtime(_) => 4,
        }
    }
}
