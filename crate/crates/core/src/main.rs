fn main() {
    std::process::exit(ncforest::cli::main_with(std::env::args_os()));
}
