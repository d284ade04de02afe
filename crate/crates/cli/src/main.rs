//! `octagon`: close constraint systems, add constraints incrementally,
//! classify dumped matrices and run the random micro-benchmarks.
//!
//! Exit codes: 0 ok, 1 usage or input error, 2 unsatisfiable, 3 benchmark
//! verification failure.

/// Calls `$f::<N, S>(args)` for the scalar and storage types selected by a
/// mode and a backend.
macro_rules! dispatch {
    ($mode:expr, $backend:expr, $f:ident($($arg:expr),* $(,)?)) => {{
        use num::rational::BigRational;
        use octagon_core::{Backend, CoDbm, Dbm, NumericMode, F64};
        match ($mode, $backend) {
            (NumericMode::ExactRational, Backend::Dense) => $f::<BigRational, Dbm<BigRational>>($($arg),*),
            (NumericMode::ExactRational, Backend::Compact) => $f::<BigRational, CoDbm<BigRational>>($($arg),*),
            (NumericMode::CheckedInt, Backend::Dense) => $f::<i64, Dbm<i64>>($($arg),*),
            (NumericMode::CheckedInt, Backend::Compact) => $f::<i64, CoDbm<i64>>($($arg),*),
            (NumericMode::BinaryFloat64, Backend::Dense) => $f::<F64, Dbm<F64>>($($arg),*),
            (NumericMode::BinaryFloat64, Backend::Compact) => $f::<F64, CoDbm<F64>>($($arg),*),
        }
    }};
}

mod args;
mod bench;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Outcome of a successful command run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Unsat,
    VerificationFailed,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Unsat => 2,
            Status::VerificationFailed => 3,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help, --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let result = match cli.command {
        Command::Close(a) => commands::close(a),
        Command::Incr(a) => commands::incr(a),
        Command::Check(a) => commands::check(a),
        Command::Gen(a) => commands::gen(a),
        Command::Bench(a) => bench::run(a),
    };
    match result {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
