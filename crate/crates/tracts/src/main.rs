fn main() {
    std::process::exit(tracts::cli::dispatch(std::env::args_os()));
}
