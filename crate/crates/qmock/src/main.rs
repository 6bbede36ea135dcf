use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let order = std::env::var(qmock::cli::ORDER_ENV).ok();
    let code = qmock::cli::run(std::env::args_os(), order.as_deref(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code)
}
