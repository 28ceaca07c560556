use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use quadtile_cli::{exit_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = run(&cli, &mut out);
    let _ = out.flush();
    if let Err(err) = &result {
        eprintln!("error: {err}");
    }
    ExitCode::from(exit_code(&result) as u8)
}
