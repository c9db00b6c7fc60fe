fn main() {
    std::process::exit(huabell::cli::main_with_args(std::env::args_os()));
}
