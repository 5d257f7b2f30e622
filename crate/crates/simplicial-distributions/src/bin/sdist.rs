fn main() {
    let code = simplicial_distributions::cli::main_from_args(std::env::args_os());
    std::process::exit(code);
}
