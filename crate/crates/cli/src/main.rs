use std::io::{IsTerminal, Write};
use std::process::ExitCode;

use leeform_cli::{run_command, Outcome};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let code = match run_command(&argv) {
        Outcome::Report {
            report,
            table,
            code,
        } => {
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "{}", report.to_json());
            if std::io::stderr().is_terminal() {
                eprint!("{table}");
            }
            code
        }
        Outcome::Text { text, code } => {
            if code == 0 {
                print!("{text}");
            } else {
                eprint!("{text}");
            }
            code
        }
    };
    ExitCode::from(code as u8)
}
