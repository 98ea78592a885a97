use std::io::Write;

fn main() {
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let code = alliances::cli::run(std::env::args(), &mut out);
    if out.flush().is_err() {
        std::process::exit(1);
    }
    std::process::exit(code);
}
