fn main() {
    std::process::exit(qentropy_cli::run(std::env::args_os()));
}
