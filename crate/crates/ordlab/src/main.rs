fn main() {
    std::process::exit(ordlab::cli::main_entry());
}
