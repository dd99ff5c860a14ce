fn main() {
    std::process::exit(stgames::cli::main_with(std::env::args_os()));
}
