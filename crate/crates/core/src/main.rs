fn main() {
    std::process::exit(contactband::cli::run(std::env::args_os()));
}
