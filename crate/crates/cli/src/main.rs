use clap::Parser;
use relaycov_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(err) = relaycov_cli::run(&cli) {
        eprintln!("relaycov: {err}");
        std::process::exit(err.exit_code());
    }
}
