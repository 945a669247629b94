fn main() {
    std::process::exit(cactus_cells::cli::run());
}
