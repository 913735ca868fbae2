fn main() {
    std::process::exit(sierpdom::app::main_with(std::env::args_os()));
}
