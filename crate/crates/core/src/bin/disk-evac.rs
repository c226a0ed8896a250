fn main() {
    std::process::exit(disk_evac::cli::run(std::env::args_os()));
}
