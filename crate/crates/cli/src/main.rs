use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pommaret_cli::{run, Cli, CliError};

fn write_file(path: &std::path::Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = run(&cli).and_then(|outcome| {
        if let Some((path, lines)) = &outcome.trace {
            write_file(path, lines)?;
        }
        match &cli.out {
            Some(path) => write_file(path, &outcome.output)?,
            None => {
                let _ = std::io::stdout().write_all(outcome.output.as_bytes());
            }
        }
        Ok(outcome.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error[verify::Failed]: one or more checks failed");
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
