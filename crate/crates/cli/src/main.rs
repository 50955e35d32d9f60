fn main() {
    std::process::exit(cublat_cli::run(std::env::args_os()));
}
