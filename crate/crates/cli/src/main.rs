use std::process::ExitCode;

use bfs_cli::{run, thread_count, Cli, CliError, THREADS_ENV};
use clap::Parser;

fn start(cli: &Cli) -> Result<(), CliError> {
    if let Some(n) = thread_count(std::env::var(THREADS_ENV).ok().as_deref())? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    let stdout = std::io::stdout();
    run(cli, &mut stdout.lock())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match start(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
