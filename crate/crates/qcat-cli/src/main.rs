use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(qcat_cli::run())
}
