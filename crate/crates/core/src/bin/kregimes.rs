fn main() {
    std::process::exit(kernel_regimes::cli::main_with_args(std::env::args_os()));
}
