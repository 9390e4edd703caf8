fn main() {
    std::process::exit(layered_advect::cli::run(std::env::args_os()));
}
