fn main() {
    std::process::exit(espwalk::cli::run());
}
