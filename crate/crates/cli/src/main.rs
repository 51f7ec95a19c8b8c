mod args;
mod bench;
mod commands;
mod record;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Partition(a) => commands::partition(a),
        Command::Bench(a) => bench::bench(a),
        Command::Verify(a) => commands::verify(a),
        Command::Gen(a) => commands::generate(a),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
