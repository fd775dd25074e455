fn main() {
    std::process::exit(diffdim::cli::main_with_args(std::env::args_os()));
}
