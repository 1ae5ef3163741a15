use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = offscreen_harness::cli::Cli::parse();
    match offscreen_harness::cli::run(cli) {
        Ok(msg) => {
            println!("{msg}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
