fn main() {
    std::process::exit(xdarboux_cli::run(std::env::args_os()));
}
