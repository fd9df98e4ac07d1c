use std::io::Write;

fn main() {
    let out = arrangeo::cli::run(std::env::args());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.output.as_bytes());
    let _ = stdout.flush();
    std::process::exit(out.code);
}
