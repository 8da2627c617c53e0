fn main() {
    std::process::exit(twinlab_cli::run(std::env::args_os()));
}
