fn main() -> std::process::ExitCode {
    dna_evidence::cli::main()
}
