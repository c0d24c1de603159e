fn main() {
    std::process::exit(coverage_depth::cli::run());
}
