use std::io;
use std::process::ExitCode;

use nsize::Limits;

fn main() -> ExitCode {
    let code = nsize_cli::run(
        std::env::args_os(),
        Limits::from_env(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
