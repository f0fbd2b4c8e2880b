fn main() {
    std::process::exit(hodge_forge::cli::run(std::env::args_os()));
}
