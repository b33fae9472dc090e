use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = seqentropy_cli::Cli::parse();
    let result = seqentropy_cli::configure_threads().and_then(|()| seqentropy_cli::run(cli));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
