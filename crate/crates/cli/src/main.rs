use std::process::ExitCode;

use clap::Parser;

use deleg_cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match deleg_cli::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("deleg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
