use std::process::ExitCode;

fn main() -> ExitCode {
    exph::cli::main_with_args(std::env::args_os())
}
