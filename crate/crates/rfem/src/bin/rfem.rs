fn main() {
    std::process::exit(rfem::cli::run(std::env::args().skip(1)));
}
