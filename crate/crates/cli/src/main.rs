use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use molien_cli::{run, Cli, CliError};

fn fail(err: &CliError) -> ExitCode {
    eprintln!("error:{}: {err}", err.kind());
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let summary: Vec<&str> = msg
                .lines()
                .map(str::trim)
                .take_while(|l| !l.is_empty())
                .collect();
            eprintln!(
                "error:usage: {}",
                summary.join(" ").trim_start_matches("error: ")
            );
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            let _ = stdout.flush();
            match &outcome.error {
                Some(err) => fail(err),
                None => ExitCode::SUCCESS,
            }
        }
        Err(err) => fail(&err),
    }
}
