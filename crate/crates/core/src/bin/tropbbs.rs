use clap::Parser;
use tropbbs::cli::{run, RunConfig};

fn main() {
    let cfg = RunConfig::parse();
    match run(&cfg) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if !outcome.success {
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("{}: {e}", e.code());
            std::process::exit(2);
        }
    }
}
