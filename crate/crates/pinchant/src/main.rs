fn main() {
    std::process::exit(pinchant::cli::run(std::env::args_os()));
}
