fn main() {
    std::process::exit(qfract::cli::run(std::env::args_os()));
}
