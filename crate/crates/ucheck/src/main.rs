fn main() {
    std::process::exit(ucheck::cli::main_with_args(std::env::args()));
}
