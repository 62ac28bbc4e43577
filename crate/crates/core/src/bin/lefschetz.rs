use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = lefschetz::cli::main_with_args(std::env::args_os());
    if outcome.error {
        eprintln!("{}", outcome.output.trim_end());
    } else {
        print!("{}", outcome.output);
    }
    ExitCode::from(outcome.exit_code as u8)
}
