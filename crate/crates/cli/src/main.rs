use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qelectra_cli::{configure_threads, execute, Cli, EXIT_INPUT, EXIT_NOT_CONVERGED, EXIT_OK};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { EXIT_OK as u8 });
        }
    };
    let outcome = configure_threads().and_then(|()| execute(&cli));
    match outcome {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            if out.converged {
                ExitCode::from(EXIT_OK as u8)
            } else {
                eprintln!("warning: at least one method did not converge");
                ExitCode::from(EXIT_NOT_CONVERGED as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
