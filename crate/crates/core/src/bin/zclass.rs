fn main() {
    std::process::exit(zclass::cli::run(std::env::args_os()));
}
