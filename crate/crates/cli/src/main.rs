//! `qad`: experiment runner for quantum anomaly detection on latent event
//! vectors.
//!
//! Exit codes: 0 success, 2 usage error, 3 data/validation error,
//! 4 numerical failure.

mod args;
mod commands;
mod pipeline;
mod runcfg;

use clap::Parser;

use qad_core::error::Error;

fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Numerical(_) | Error::UndefinedRatio => 4,
        _ => 3,
    }
}

fn main() {
    let cli = args::Cli::parse();
    let result = match &cli.command {
        args::Command::Generate(a) => commands::cmd_generate(a),
        args::Command::Train(a) => commands::cmd_train(a),
        args::Command::Evaluate(a) => commands::cmd_evaluate(a),
        args::Command::Sweep(a) => commands::cmd_sweep(a),
        args::Command::Characterize(a) => commands::cmd_characterize(a),
    };
    if let Err(error) = result {
        eprintln!("error: {error}");
        std::process::exit(exit_code(&error));
    }
}
