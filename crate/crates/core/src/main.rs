use std::io::Write;
use std::process::ExitCode;

use bes_core::cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, report) = run(&cli);
    let mut out = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = out.write_all(report.render().as_bytes());
    ExitCode::from(code as u8)
}
