use std::process::ExitCode;

use clap::Parser;
use extform_cli::args::Cli;
use extform_cli::commands::run;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.status.code())
        }
        Err(e) => {
            eprintln!("extform: {e}");
            ExitCode::from(e.status().code())
        }
    }
}
