fn main() {
    std::process::exit(ybe_core::cli::run(std::env::args_os()));
}
