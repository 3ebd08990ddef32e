use clap::Parser;

use coincide_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => print!("{out}"),
        Err(e) => {
            eprintln!("coincide: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
