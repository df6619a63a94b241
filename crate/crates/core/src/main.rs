fn main() {
    std::process::exit(oneshot::cli::run(std::env::args_os()));
}
