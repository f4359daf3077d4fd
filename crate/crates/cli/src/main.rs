mod args;
mod render;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use locale_forge::Error;

use args::Cli;
use run::Failure;

const PASS: u8 = 0;
const FAILED: u8 = 1;
const USAGE: u8 = 2;
const INTERNAL: u8 = 3;

fn error_doc(kind: &str, message: &str, at: Option<(usize, usize)>) -> String {
    let mut e = json!({ "kind": kind, "message": message });
    if let Some((line, col)) = at {
        e["line"] = json!(line);
        e["col"] = json!(col);
    }
    serde_json::to_string_pretty(&json!({ "error": e })).expect("plain JSON") + "\n"
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InfiniteDomain(_) => USAGE,
        Error::Json(_) => INTERNAL,
        _ => FAILED,
    }
}

fn emit(out: &str) -> bool {
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_ok()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            emit(&error_doc("usage", e.kind().as_str().unwrap_or("invalid arguments"), None));
            return ExitCode::from(USAGE);
        }
    };
    std::panic::set_hook(Box::new(|_| {}));
    let result = std::panic::catch_unwind(|| run::run(&cli.command, cli.format));
    let code = match result {
        Ok(Ok(outcome)) => {
            if !emit(&outcome.body) {
                return ExitCode::from(INTERNAL);
            }
            if outcome.passed {
                PASS
            } else {
                FAILED
            }
        }
        Ok(Err(Failure::Usage(msg))) => {
            emit(&error_doc("usage", &msg, None));
            USAGE
        }
        Ok(Err(Failure::Core(e))) => {
            let at = match &e {
                Error::Parse { line, col, .. } => Some((*line, *col)),
                _ => None,
            };
            emit(&error_doc(e.kind(), &e.to_string(), at));
            exit_for(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal error".into());
            emit(&error_doc("internal", &msg, None));
            INTERNAL
        }
    };
    ExitCode::from(code)
}
