fn main() {
    std::process::exit(lightcone::cli::main_with_args(std::env::args_os()));
}
