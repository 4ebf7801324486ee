use std::io::{stderr, stdout};

fn main() {
    let jobs = std::env::var(blowuplab::cli::JOBS_ENV).ok();
    let code = blowuplab::cli::run(std::env::args_os(), jobs, &mut stdout().lock(), &mut stderr().lock());
    std::process::exit(code);
}
