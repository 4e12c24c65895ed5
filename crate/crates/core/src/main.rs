fn main() {
    std::process::exit(rindler_corr::cli::run(std::env::args_os()));
}
