use std::process::ExitCode;

fn main() -> ExitCode {
    kkinetics::cli::run(std::env::args_os())
}
