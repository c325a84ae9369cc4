fn main() {
    std::process::exit(toric_seshadri::cli::main_with(std::env::args_os()));
}
