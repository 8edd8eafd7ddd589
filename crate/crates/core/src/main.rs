fn main() -> std::process::ExitCode {
    xzdecode::cli::main()
}
