fn main() {
    std::process::exit(gorbit::cli::run(std::env::args_os()));
}
