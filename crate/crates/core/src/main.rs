use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use linesys::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut err = std::io::stderr();
    let status = run(&cli, &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(status)
}
