fn main() {
    std::process::exit(merosin_cli::dispatch(std::env::args_os()));
}
