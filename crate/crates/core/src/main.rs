use clap::Parser;

fn main() {
    let cli = modcurve::cli::Cli::parse();
    std::process::exit(i32::from(modcurve::cli::run(cli)));
}
