use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let execution = qlogic_cli::run(std::env::args().skip(1));
    print!("{}", execution.stdout);
    eprint!("{}", execution.stderr);
    std::io::stdout().flush().ok();
    ExitCode::from(execution.exit_code as u8)
}
