fn main() {
    std::process::exit(bounded_affine::cli::run());
}
