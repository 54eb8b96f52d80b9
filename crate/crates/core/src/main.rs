fn main() {
    std::process::exit(neffbound::cli::run(std::env::args_os()));
}
