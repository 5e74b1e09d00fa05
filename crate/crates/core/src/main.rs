fn main() {
    std::process::exit(gridsat::cli::main_with_args(std::env::args_os()));
}
