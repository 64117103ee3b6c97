fn main() {
    std::process::exit(treemorph_cli::cli::main_with_args(std::env::args_os()));
}
