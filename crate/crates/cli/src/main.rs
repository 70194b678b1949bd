mod args;
mod commands;
mod report;
mod verify;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use oscent_core::{Error, OscillatorParams};

use crate::args::{Cli, Command};
use crate::commands::CliError;
use crate::report::Report;

const EXIT_VERIFY: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_ACCURACY: u8 = 3;
const EXIT_USAGE: u8 = 64;

const DEFAULT_TOL: f64 = 1e-7;

fn default_tolerance() -> Result<(f64, Option<String>), CliError> {
    match std::env::var("OSCENT_PRECISION") {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok((v, Some(format!("tolerance {v:e} taken from OSCENT_PRECISION")))),
            _ => Err(CliError::Usage(format!("OSCENT_PRECISION must be a positive number, got {s:?}"))),
        },
        Err(_) => Ok((DEFAULT_TOL, None)),
    }
}

fn execute(cli: &Cli) -> Result<(Report, bool), CliError> {
    let params = OscillatorParams::new(cli.lambda)?;
    let mut warnings = Vec::new();
    let mut failed = false;
    let results = match &cli.command {
        Command::Angular(a) => commands::angular(a)?,
        Command::Radial(a) => commands::radial(a, params)?,
        Command::Asymptotic(a) => commands::asymptotic(a, params)?,
        Command::Total(a) => commands::total(a, params)?,
        Command::Uncertainty(a) => commands::uncertainty(a, params)?,
        Command::Sweep(a) => commands::sweep(a, params)?,
        Command::Verify(a) => {
            let tol = match a.tol {
                Some(t) => t,
                None => {
                    let (t, note) = default_tolerance()?;
                    warnings.extend(note);
                    t
                }
            };
            let records = verify::run(a.suite, tol);
            failed = records.iter().any(|r| !r.warnings.is_empty());
            records
        }
    };
    let mut request = serde_json::to_value(cli).expect("request serializes");
    request["units"] = if cli.bits { "bits" } else { "nats" }.into();
    Ok((
        Report {
            request,
            results,
            warnings,
            bits: cli.bits,
        },
        failed,
    ))
}

fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Usage(_) => EXIT_USAGE,
        CliError::Core(Error::Accuracy { .. }) => EXIT_ACCURACY,
        CliError::Core(_) => EXIT_DOMAIN,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("oscent: could not size the worker pool: {e}");
        }
    }
    match execute(&cli) {
        Ok((report, failed)) => {
            print!("{}", report.render(cli.format));
            if failed {
                eprintln!("oscent: verification failed");
                ExitCode::from(EXIT_VERIFY)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("oscent: usage error: {msg}"),
                CliError::Core(err) => eprintln!("oscent: {err}"),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
