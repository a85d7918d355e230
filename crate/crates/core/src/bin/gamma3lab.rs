use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = gamma3lab::cli::run_args(std::env::args_os());
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = io::stdout()
        .lock()
        .write_all(outcome.stdout.as_bytes())
        .and_then(|_| io::stdout().flush());
    let _ = io::stderr().lock().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.status as u8)
}
