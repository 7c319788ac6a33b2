fn main() {
    std::process::exit(qspin::cli::run(std::env::args().collect()));
}
