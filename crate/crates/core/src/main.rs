fn main() {
    std::process::exit(knnrgg::cli::run(std::env::args_os()));
}
