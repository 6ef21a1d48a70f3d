fn main() {
    std::process::exit(proxyfinder::cli::main_entry(std::env::args_os()));
}
