use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = witt_theta::cli::run(std::env::args());
    // A closed pipe downstream is not an error worth reporting.
    let _ = writeln!(std::io::stdout(), "{}", out.stdout);
    if let Some(s) = out.stderr {
        let _ = std::io::stderr().write_all(s.as_bytes());
    }
    ExitCode::from(out.code as u8)
}
