fn main() {
    std::process::exit(markoff::cli::main_with_args(std::env::args_os()));
}
