fn main() {
    std::process::exit(physfadkit::cli::run_from_args(std::env::args_os()));
}
