use std::fs;
use std::process::ExitCode;

use clap::Parser;
use preoperad_cli::{render, run, Cli, Command, EXIT_CONFIG};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Verify(a) | Command::Cohomology(a) | Command::Gerstenhaber(a) => a.out.clone(),
    };
    let result = run(&cli);
    if let Some(err) = result.document.get("error") {
        eprintln!("error: {}", err["message"].as_str().unwrap_or_default());
    }
    let text = render(&result.document);
    match out {
        Some(path) => {
            if let Err(e) = fs::write(&path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_CONFIG as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(result.status as u8)
}
