use std::process::ExitCode;

use brw_cli::{execute, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("brw: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
