use std::io::Write;

fn main() {
    let out = sts_cli::run(std::env::args_os());
    // Write errors (e.g. a closed pipe) must not mask the exit code.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
