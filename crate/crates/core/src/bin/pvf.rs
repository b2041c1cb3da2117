use std::process::ExitCode;

fn main() -> ExitCode {
    let result = pvf::cli::execute_command(std::env::args_os());
    print!("{}", result.payload.render());
    ExitCode::from(result.exit_code as u8)
}
