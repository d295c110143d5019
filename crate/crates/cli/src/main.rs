use std::io;
use std::process::ExitCode;

use clap::Parser;
use hardy_muntz_cli::{dispatch, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    let code = dispatch(&cfg, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code)
}
