use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use tautilt::{run, Config, EXIT_INPUT};

fn main() -> ExitCode {
    let config = match Config::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&config) {
        Ok(outcome) => {
            let written = match &config.output {
                Some(path) => {
                    std::fs::write(path, &outcome.text).map_err(|e| format!("cannot write {}: {e}", path.display()))
                }
                None => {
                    print!("{}", outcome.text);
                    Ok(())
                }
            };
            if let Err(msg) = written {
                eprintln!("error: {msg}");
                return ExitCode::from(EXIT_INPUT as u8);
            }
            ExitCode::from(outcome.code as u8)
        }
        Err((msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
    }
}
