fn main() {
    std::process::exit(pstiefel::cli::main());
}
