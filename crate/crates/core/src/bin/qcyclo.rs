fn main() {
    std::process::exit(qcyclo::cli::main_from_env());
}
