fn main() {
    std::process::exit(croute::cli::main_with(std::env::args_os()));
}
