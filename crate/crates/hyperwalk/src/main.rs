fn main() {
    std::process::exit(hyperwalk::cli::run(std::env::args_os()));
}
