mod cli;

fn main() {
    std::process::exit(cli::main_with_args(std::env::args().collect()));
}
