fn main() {
    std::process::exit(stonework::cli::main());
}
