fn main() {
    std::process::exit(spanalyze::cli::run(std::env::args()));
}
