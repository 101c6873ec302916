fn main() {
    std::process::exit(prolongation::cli::run(std::env::args_os()));
}
