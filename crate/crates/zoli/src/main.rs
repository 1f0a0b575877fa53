use std::io::{self, IsTerminal};
use std::process::ExitCode;

use zoli::cli::{main_with, Streams};

fn main() -> ExitCode {
    let stdin = io::stdin();
    let interactive = stdin.is_terminal();
    let code = main_with(
        std::env::args_os(),
        Streams {
            input: &mut stdin.lock(),
            out: &mut io::stdout().lock(),
            err: &mut io::stderr().lock(),
            interactive,
        },
    );
    ExitCode::from(code)
}
