fn main() {
    // exit quietly when stdout is a closed pipe (e.g. piped into `head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(reslat::cli::run(std::env::args_os()));
}
