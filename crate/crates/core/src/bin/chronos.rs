fn main() {
    std::process::exit(chronos::cli::main_with_args(std::env::args_os()));
}
