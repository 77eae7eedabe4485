fn main() {
    std::process::exit(bicover::cli::run(std::env::args_os()));
}
