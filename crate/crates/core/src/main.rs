fn main() {
    std::process::exit(graphlab::cli::main());
}
