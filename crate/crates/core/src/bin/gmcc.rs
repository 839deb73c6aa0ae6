fn main() {
    std::process::exit(gmcc::cli::main());
}
