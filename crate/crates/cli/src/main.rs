mod args;
mod commands;
mod config;
mod output;
mod range;

use std::io;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let raw: Result<Vec<String>, _> = std::env::args_os().map(|a| a.into_string()).collect();
    let Ok(raw) = raw else {
        eprintln!("error: arguments must be valid UTF-8");
        return ExitCode::from(EXIT_USAGE);
    };
    let merged = match config::merge(raw) {
        Ok(args) => args,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cli = match Cli::try_parse_from(merged) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // --help and --version print to stdout and are not errors
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(outcome) => {
            let (stdout, stderr) = (io::stdout(), io::stderr());
            if let Err(e) = outcome
                .report
                .emit(outcome.format, &mut stdout.lock(), &mut stderr.lock())
            {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::FAILURE;
                }
            }
            ExitCode::from(outcome.code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
