use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use smallcover_cli::cli::{run, Cli, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let status = match run(&cli, &mut out) {
        Ok(status) => status,
        Err(err) => {
            let _ = out.flush();
            eprintln!("error: {err}");
            Status::UsageError
        }
    };
    if let Err(err) = out.flush() {
        eprintln!("error: {err}");
        return ExitCode::from(Status::UsageError as u8);
    }
    ExitCode::from(status as u8)
}
