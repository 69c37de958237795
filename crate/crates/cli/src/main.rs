fn main() {
    std::process::exit(uq2_cli::run(std::env::args_os()));
}
