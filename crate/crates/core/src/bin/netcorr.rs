use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use netcorr::cli::{run, Cli, EXIT_ERROR};
use netcorr::io::write_text;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    };
    if let Some(path) = &outcome.output {
        if let Err(e) = write_text(path, &outcome.text) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    } else {
        let mut out = std::io::stdout().lock();
        if out.write_all(outcome.text.as_bytes()).is_err() {
            return ExitCode::from(EXIT_ERROR);
        }
    }
    if let Some(msg) = &outcome.message {
        eprintln!("error: {msg}");
    }
    ExitCode::from(outcome.code)
}
