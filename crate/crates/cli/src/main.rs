use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use akh_cli::{configure_threads, run, Cli, RunConfig, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    if let Err(msg) = configure_threads(std::env::var("AKH_THREADS").ok().as_deref()) {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_INPUT as u8);
    }
    let outcome = run(&RunConfig::from(cli.command));
    eprint!("{}", outcome.stderr);
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(outcome.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(EXIT_INPUT as u8);
    }
    ExitCode::from(outcome.status as u8)
}
