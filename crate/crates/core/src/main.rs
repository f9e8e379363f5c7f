fn main() -> std::process::ExitCode {
    barrier_rhs::cli::run()
}
