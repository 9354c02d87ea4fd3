use std::process::ExitCode;

use clap::Parser;
use hallkit_cli::{exit_code, run, Cli, EXIT_OK, EXIT_VIOLATED};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render());
            ExitCode::from(if report.ok { EXIT_OK } else { EXIT_VIOLATED } as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
