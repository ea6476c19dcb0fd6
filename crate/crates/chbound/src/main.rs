use std::io::Write;

fn main() {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let mut err = stderr.lock();
    let code = chbound::cli::run(std::env::args_os(), &mut out, &mut err);
    if out.flush().is_err() {
        std::process::exit(2);
    }
    std::process::exit(code);
}
