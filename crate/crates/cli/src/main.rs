mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use wci::{ConstructError, HodgeError, PairError, PrimeError, RepresentError};

/// A failed command: bad arguments (exit 2) or a domain error (exit 1).
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain { kind: &'static str, message: String },
}

impl Failure {
    pub fn usage(message: String) -> Self {
        Failure::Usage(message)
    }

    pub fn domain(kind: &'static str, message: String) -> Self {
        Failure::Domain { kind, message }
    }

    pub fn io(err: impl std::fmt::Display) -> Self {
        Failure::domain("io", err.to_string())
    }
}

macro_rules! domain_from {
    ($($ty:ty => $kind:literal),* $(,)?) => {$(
        impl From<$ty> for Failure {
            fn from(err: $ty) -> Self {
                Failure::domain($kind, err.to_string())
            }
        }
    )*};
}

domain_from!(
    PairError => "pair",
    RepresentError => "represent",
    HodgeError => "hodge",
    PrimeError => "primes",
    ConstructError => "construct",
);

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(commands::Output::Json(value)) => {
            println!("{value}");
            ExitCode::SUCCESS
        }
        Ok(commands::Output::Done { success }) => {
            if success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            println!("{}", json!({"error": {"kind": "usage", "message": message}}));
            ExitCode::from(2)
        }
        Err(Failure::Domain { kind, message }) => {
            println!("{}", json!({"error": {"kind": kind, "message": message}}));
            ExitCode::from(1)
        }
    }
}
