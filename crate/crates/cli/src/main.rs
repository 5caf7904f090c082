use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use kbnorm_cli::args::Cli;
use kbnorm_cli::{configure_threads, run};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = configure_threads().and_then(|_| run(cli));
    match result {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.text.as_bytes());
            match outcome.failure {
                None => ExitCode::SUCCESS,
                Some(e) => {
                    eprintln!("kbnorm: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Err(e) => {
            eprintln!("kbnorm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
