fn main() {
    std::process::exit(recforge::cli::main_with_args(std::env::args_os()));
}
