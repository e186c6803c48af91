fn main() {
    std::process::exit(entangling_power::cli::main(std::env::args_os()));
}
