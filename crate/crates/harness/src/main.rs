fn main() {
    if let Err(e) = maisac_harness::cli::run(std::env::args().collect()) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
