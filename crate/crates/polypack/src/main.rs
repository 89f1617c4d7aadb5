fn main() {
    std::process::exit(polypack::shell::run(std::env::args_os()));
}
