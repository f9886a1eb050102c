fn main() {
    std::process::exit(gmf::cli::run());
}
