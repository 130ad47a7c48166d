use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = spinfluct_cli::run_with_args(std::env::args_os(), &mut io::stdin().lock());
    let _ = io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
