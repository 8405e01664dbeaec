fn main() {
    std::process::exit(semifact_cli::run(std::env::args_os()));
}
