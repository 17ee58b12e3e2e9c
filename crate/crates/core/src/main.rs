use clap::Parser;

fn main() {
    let cli = relay_dmt::cli::Cli::parse();
    std::process::exit(relay_dmt::cli::run(cli));
}
