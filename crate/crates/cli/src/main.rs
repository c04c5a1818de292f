use std::process::ExitCode;

use clap::Parser;
use prevision_cli::{report, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", r.to_json());
            } else {
                print!("{}", report::render(&r));
            }
            ExitCode::from(r.exit_status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
