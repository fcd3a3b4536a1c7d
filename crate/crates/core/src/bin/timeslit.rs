fn main() {
    std::process::exit(timeslit::cli::main_with_args(std::env::args_os()));
}
