use std::io;
use std::process::ExitCode;

use clap::Parser;
use quditsim::cli::{self, Cli};

fn main() -> ExitCode {
    let args = Cli::parse();
    let code = cli::run(&args, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
