mod args;
mod commands;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match commands::run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(commands::exit_code(&e));
        }
    };
    let written = match &cli.common.out {
        Some(path) => File::create(path)
            .map_err(anyhow::Error::from)
            .and_then(|f| {
                let mut w = BufWriter::new(f);
                report.render(cli.common.format, &mut w)?;
                Ok(w.flush()?)
            }),
        None => {
            let mut out = io::stdout().lock();
            report.render(cli.common.format, &mut out)
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    if report.failed {
        eprintln!("error: cross-route or identity check exceeded its tolerance");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
