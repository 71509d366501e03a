use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use novikov_cli::{dispatch, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    match dispatch(&cfg) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not worth a panic.
            let _ = stdout.write_all(out.text.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
