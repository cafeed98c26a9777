use std::process::ExitCode;

use clap::Parser;
use sl2harm_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(&cli, &mut stdout) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("sl2harm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
