fn main() {
    let (text, code) = scw::cli::run(std::env::args_os());
    if code == 0 || code == 1 {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    std::process::exit(code);
}
