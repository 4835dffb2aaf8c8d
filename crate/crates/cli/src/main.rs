//! `biclosed`: enumerate, convert and check biclosed sets and quasitrivial
//! semigroups from the command line.
//!
//! Results go to standard output (or `--output`); every failure is one JSON
//! object on standard error with a nonzero exit code:
//! 2 invalid input or flags, 3 rank too large, 4 not biclosed,
//! 5 not associative, 6 cross-check disagreement, 7 order or lattice failure,
//! 1 failed acceptance criterion.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use args::{Cli, Command};
use commands::Failure;

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::new(2, "Io", e.to_string());
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(io),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(io)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<String, Failure> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::config("--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().map_err(|e| Failure::config(e.to_string()))?;
    }
    let force = cli.force_large;
    match &cli.command {
        Command::Enumerate(a) => commands::enumerate(a, force),
        Command::Convert(a) => commands::convert(a),
        Command::Check(a) => commands::check(a),
        Command::Classify(a) => commands::classify_cmd(a),
        Command::Act(a) => commands::act(a, force),
        Command::Poset(a) => commands::poset(a, force),
        Command::Verify(a) => commands::verify_cmd(a, force),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.render().to_string();
            eprintln!("{}", json!({ "error": "InvalidConfig", "message": message.trim() }));
            return ExitCode::from(2);
        }
    };

    let result = dispatch(&cli).and_then(|text| emit(&cli, &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(fail) => {
            if let Some(text) = &fail.output {
                let _ = emit(&cli, text);
            }
            eprintln!("{}", fail.body);
            ExitCode::from(fail.code as u8)
        }
    }
}
