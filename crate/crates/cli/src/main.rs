use std::process::ExitCode;

use clap::Parser;

use qfaulhaber_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = execute(&cli);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.output) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None if outcome.code == 0 || !outcome.output.starts_with("error:") => print!("{}", outcome.output),
        None => eprint!("{}", outcome.output),
    }
    ExitCode::from(outcome.code as u8)
}
