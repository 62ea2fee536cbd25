use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cyclehom_cli::app::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cyclehom_cli::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
