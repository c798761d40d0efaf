use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let out = hirzebruch::cli::run(&argv);
    if !out.stdout.is_empty() {
        print!("{}", out.stdout);
        std::io::stdout().flush().ok();
    }
    if !out.stderr.is_empty() {
        eprint!("{}", out.stderr);
        std::io::stderr().flush().ok();
    }
    std::process::exit(out.code);
}
