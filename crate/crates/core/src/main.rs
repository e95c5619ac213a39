fn main() {
    let code = a1hilb::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
