fn main() {
    std::process::exit(permuto_decomp::cli::main_with_args(std::env::args_os()));
}
