fn main() {
    std::process::exit(chsh_lab::run_cli(std::env::args_os()));
}
