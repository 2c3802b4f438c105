fn main() {
    std::process::exit(circsym::app::main_with_args(std::env::args_os()));
}
