fn main() {
    std::process::exit(paw::cli::run());
}
