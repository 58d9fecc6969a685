use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = wigner_cli::run_args(std::env::args_os());
    if let Some(msg) = &outcome.message {
        eprintln!("{}", msg.trim_end());
    }
    if let (Some(report), false) = (&outcome.report, outcome.wrote_file) {
        println!("{report}");
    }
    ExitCode::from(outcome.code)
}
