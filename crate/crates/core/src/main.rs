fn main() {
    let code = tropcon::cli::main_with_env();
    std::process::exit(code);
}
