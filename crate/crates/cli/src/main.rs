fn main() {
    let (code, out) = sumfree_cli::run(std::env::args_os());
    if code == 2 && !out.trim_start().starts_with('{') {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
