use std::io::Write;
use std::process::ExitCode;

use topokit::cli::{run, FsSource, EXIT_INPUT};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let out = run(&args, &FsSource);
    match &out.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out.text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
        None if out.exit == EXIT_INPUT && !out.text.starts_with("command:") && !out.text.starts_with('{') => {
            eprint!("{}", out.text);
        }
        None => {
            let _ = std::io::stdout().write_all(out.text.as_bytes());
        }
    }
    ExitCode::from(out.exit as u8)
}
