use clap::Parser;

fn main() {
    let cli = frix_cli::Cli::parse();
    if let Err(e) = frix_cli::run(cli) {
        eprintln!("frix: {e}");
        std::process::exit(e.exit_code());
    }
}
