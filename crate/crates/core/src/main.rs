fn main() {
    std::process::exit(mukai::cli::main_with(std::env::args_os()));
}
