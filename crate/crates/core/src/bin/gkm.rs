fn main() {
    std::process::exit(gkm::cli::main());
}
