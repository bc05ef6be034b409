fn main() {
    std::process::exit(commprob::cli::run(std::env::args_os()));
}
