mod args;
mod commands;
mod render;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::CliError;
use render::Report;

fn run(cli: &Cli) -> Result<Report, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.common.threads as usize)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    pool.install(|| {
        Ok(match &cli.command {
            Command::Expand(a) => Report::Expand(commands::expand(a)?),
            Command::Verify(a) => Report::Verify(commands::verify(a)?),
            Command::Scan(a) => Report::Scan(commands::scan(a)?),
            Command::Oracle(a) => Report::Oracle(commands::oracle(a)?),
        })
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("qpos: {e}");
            return ExitCode::from(2);
        }
    };
    let text = report.render(cli.common.format);
    let written = match &cli.common.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("qpos: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(status(&report))
}

fn status(report: &Report) -> u8 {
    if report.passed() {
        0
    } else {
        1
    }
}
