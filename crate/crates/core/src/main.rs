fn main() {
    std::process::exit(sylvan::cli::run_from_args(std::env::args_os()));
}
