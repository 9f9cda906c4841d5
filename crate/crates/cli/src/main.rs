use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use ramicalc::{default_prime, run, Cli, CliError};

fn read_input(arg: &str) -> Result<String, CliError> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    let read_err = |source| CliError::Read { path: arg.to_string(), source };
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(read_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(arg).map_err(read_err)
    }
}

fn write(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

fn main_inner(cli: &Cli) -> Result<i32, CliError> {
    let common = cli.command.common();
    let text = read_input(&common.input)?;
    let p = default_prime(std::env::var("RAMICALC_P").ok())?;
    let out = run(&cli.command, &text, p)?;
    if let ramicalc::Command::Harmonicity(ramicalc::HarmonicityArgs { csv: Some(path), .. }) = &cli.command {
        match &out.csv {
            Some(csv) => write(path, csv)?,
            None => eprintln!("ramicalc: {}; {} not written", CliError::EmptyData, path.display()),
        }
    }
    match &common.output {
        Some(path) => write(path, &out.report)?,
        None => print!("{}", out.report),
    }
    Ok(out.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("ramicalc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
