fn main() {
    std::process::exit(gmalg_core::cli::main());
}
