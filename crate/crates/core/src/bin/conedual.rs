fn main() {
    std::process::exit(conedual::cli::main_with_args(std::env::args_os()));
}
