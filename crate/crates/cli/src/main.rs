fn main() {
    std::process::exit(accp_cli::run(std::env::args_os()));
}
