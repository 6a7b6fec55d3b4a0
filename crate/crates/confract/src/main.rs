fn main() {
    confract::cli::init_logging();
    std::process::exit(confract::cli::run(std::env::args_os()));
}
