use clap::Parser;

fn main() {
    let cli = rdunkl::cli::Cli::parse();
    std::process::exit(rdunkl::cli::run(cli));
}
