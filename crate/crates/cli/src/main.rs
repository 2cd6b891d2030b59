fn main() {
    std::process::exit(quadembed_cli::run(std::env::args_os()));
}
