fn main() {
    std::process::exit(hqz::cli::main_with_args(std::env::args_os()));
}
