use std::io::Write;

use clap::Parser;
use rico_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{out}");
        }
        Err(e) => {
            eprintln!("rico: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
