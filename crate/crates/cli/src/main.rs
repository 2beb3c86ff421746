fn main() {
    std::process::exit(irrtree_cli::run(std::env::args_os()));
}
