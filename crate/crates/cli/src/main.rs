fn main() {
    std::process::exit(gaussdist_cli::main_with_args(std::env::args_os()));
}
