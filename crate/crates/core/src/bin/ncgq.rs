fn main() {
    std::process::exit(ncgq::cli::main_with_args(std::env::args_os()));
}
