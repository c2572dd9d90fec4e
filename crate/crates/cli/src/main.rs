use std::process::ExitCode;

use clap::Parser;
use mohgen_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    ExitCode::from(run(cli, &mut stdout, &mut stderr))
}
