fn main() {
    std::process::exit(frw_spin_cli::run(std::env::args_os()));
}
