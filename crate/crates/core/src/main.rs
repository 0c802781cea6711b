use clap::Parser;
use hsl_tori::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let code = run(cli, &mut std::io::stderr());
    std::process::exit(code);
}
