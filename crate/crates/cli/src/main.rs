use std::io::Write;
use std::process::ExitCode;

use abelkit_cli::{render, run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let text = render(&outcome, cli.format);
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::FAILURE;
            }
            if !text.ends_with('\n') {
                let _ = writeln!(out);
            }
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("abelkit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
