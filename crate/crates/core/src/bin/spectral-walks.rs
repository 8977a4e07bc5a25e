fn main() {
    std::process::exit(spectral_walks::cli::run(std::env::args_os()));
}
