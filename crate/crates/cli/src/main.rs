use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Exit status 2 for bad input or usage, 1 for internal failures.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: String) -> Self {
        Failure { code: 2, message }
    }

    pub fn internal(message: String) -> Self {
        Failure { code: 1, message }
    }
}

impl From<mewis_core::Error> for Failure {
    fn from(e: mewis_core::Error) -> Self {
        match e {
            mewis_core::Error::BudgetExceeded(_) => Failure::internal(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

/// `print!` that ignores a closed pipe.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout().lock(), $($arg)*);
    }};
}

mod args;
mod bench;
mod commands;
mod input;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(a) => commands::solve(a),
        Command::Greedy(a) => commands::greedy(a),
        Command::Exact(a) => commands::exact(a),
        Command::Pool(a) => commands::pool(a),
        Command::Gen(a) => commands::gen(a),
        Command::Convert(a) => commands::convert(a),
        Command::Bench(a) => bench::run(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
