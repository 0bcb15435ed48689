use std::io::{self, Write};

fn main() {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let status = trirec_cli::run(std::env::args().collect(), &mut out, &mut err);
    let _ = out.flush();
    std::process::exit(status.0);
}
