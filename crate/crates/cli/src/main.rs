fn main() {
    std::process::exit(tropzeta::run(std::env::args_os()));
}
