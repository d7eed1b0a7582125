fn main() {
    std::process::exit(qm_core::cli::run(std::env::args_os()));
}
