fn main() {
    std::process::exit(mukai_bn_cli::run(std::env::args_os()));
}
