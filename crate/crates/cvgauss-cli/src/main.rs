fn main() {
    std::process::exit(cvgauss_cli::run());
}
