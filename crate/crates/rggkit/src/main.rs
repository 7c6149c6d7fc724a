fn main() {
    std::process::exit(rggkit::cli::run(std::env::args_os()));
}
