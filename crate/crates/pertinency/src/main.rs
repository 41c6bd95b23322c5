use std::io;
use std::process::ExitCode;

use clap::Parser;
use pertinency::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = pertinency::run_with(cli, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
