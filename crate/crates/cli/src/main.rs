mod cli;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use cli::Cli;

/// Exit code for malformed input, unknown subcommands and bad files.
const INPUT_ERROR: u8 = 3;

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(INPUT_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    let json = args.global.json;
    match run::dispatch(args) {
        Ok(report) => {
            let text = if json { report.to_json() + "\n" } else { report.to_text() };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(report.verdict.exit_code() as u8)
        }
        Err(e) => {
            if json {
                println!("{}", serde_json::json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
