use std::process::ExitCode;

use clap::Parser;
use cjw_cli::{run, Cli};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let (report, mut artifacts) = match run(&cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let stdout = artifacts.stdout.take();
    if let Err(e) = artifacts.write() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match stdout {
        Some(text) => print!("{text}"),
        None => print!("{}", report.to_json()),
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
