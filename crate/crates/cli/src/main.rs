fn main() {
    std::process::exit(nilforge_cli::run(std::env::args_os()));
}
