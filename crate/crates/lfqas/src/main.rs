fn main() -> std::process::ExitCode {
    lfqas::cli::run(std::env::args_os())
}
