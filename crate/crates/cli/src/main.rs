use std::io::Write;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::Parser;
use grundylab_cli::{run, Cli, EXIT_RESOURCE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Duration::from_secs(cli.max_seconds);
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(run(&cli));
    });
    let result = match rx.recv_timeout(budget) {
        Ok(result) => result,
        Err(_) => {
            eprintln!("error: time budget of {budget:?} exceeded");
            return ExitCode::from(EXIT_RESOURCE as u8);
        }
    };
    match result {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
