use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pdot_cli::{env_fuel, execute, Cli, Exit};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Exit::Usage as u8 } else { Exit::Ok as u8 });
        }
    };
    let fuel = match env_fuel(std::env::var("PDOT_FUEL").ok().as_deref()) {
        Ok(f) => f,
        Err(msg) => {
            eprintln!("pdot: {msg}");
            return ExitCode::from(Exit::Usage as u8);
        }
    };
    let report = execute(&cli, fuel);
    let _ = std::io::stdout().write_all(report.stdout.as_bytes());
    let _ = std::io::stderr().write_all(report.stderr.as_bytes());
    ExitCode::from(report.exit as u8)
}
