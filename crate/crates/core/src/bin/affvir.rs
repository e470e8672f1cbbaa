fn main() {
    std::process::exit(affvir_core::cli::main_with_args(std::env::args_os()));
}
