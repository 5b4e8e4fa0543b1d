fn main() {
    std::process::exit(twogirth::cli::main_with_args(std::env::args_os()));
}
