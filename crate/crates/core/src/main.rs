fn main() {
    std::process::exit(alphaflip::cli::run(std::env::args_os()));
}
