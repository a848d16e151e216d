fn main() {
    std::process::exit(modarith::cli::run(std::env::args_os()));
}
