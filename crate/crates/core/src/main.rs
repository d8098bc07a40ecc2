fn main() {
    std::process::exit(transmon_crosstalk::cli::main_with_args(std::env::args_os()));
}
