fn main() {
    std::process::exit(trapzopt_cli::run(std::env::args_os()));
}
