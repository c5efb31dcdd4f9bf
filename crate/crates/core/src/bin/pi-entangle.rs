use clap::Parser;

fn main() {
    let cli = pi_entangle::cli::Cli::parse();
    std::process::exit(pi_entangle::cli::run(cli));
}
