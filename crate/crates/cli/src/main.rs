use std::process::ExitCode;

use clap::Parser;

use indperm_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.rendered);
            if out.report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("indperm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
