fn main() {
    std::process::exit(lcpkit::cli::main_with_args(std::env::args_os()));
}
