fn main() {
    std::process::exit(tgx_cli::main_with_args(std::env::args_os()));
}
