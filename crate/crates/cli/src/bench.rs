//! `octagon bench`: random systems, every selected algorithm, one CSV record
//! per (algorithm, trial), each result checked against a dense recomputation.

use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use octagon_core::{
    close, dump_csv, gen_random, incremental, strengthen, tight_closure, Dbm, DbmStorage, IncrAlgorithm, MinCounter,
    NumericMode, Outcome, Scalar, System,
};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::args::BenchArgs;
use crate::commands::{canonical_closure, check_algorithm};
use crate::Status;

#[derive(Serialize, Debug, Clone)]
struct BenchRecord {
    algo: &'static str,
    n: usize,
    trial: u64,
    wall_nanos: u128,
    min_ops: u64,
    outcome: &'static str,
    checksum: String,
}

pub fn default_algorithms(mode: NumericMode) -> Vec<IncrAlgorithm> {
    use IncrAlgorithm::*;
    match mode {
        NumericMode::CheckedInt => vec![Mine, Closure, Hoisted, Tight],
        _ => vec![Mine, Closure, Hoisted, Strong, StrongReduce],
    }
}

pub fn run(a: BenchArgs) -> Result<Status> {
    let mode = a.numeric.mode;
    let algorithms = if a.algo.is_empty() { default_algorithms(mode) } else { a.algo.clone() };
    for &alg in &algorithms {
        check_algorithm(alg, mode)?;
    }
    if a.workload.vars == 0 {
        bail!("--vars must be at least 1");
    }
    let (records, failures) = dispatch!(mode, a.numeric.backend, run_with(&a, &algorithms))?;

    let mut out = csv::Writer::from_writer(Vec::new());
    for r in &records {
        out.serialize(r)?;
    }
    let text = String::from_utf8(out.into_inner().context("flushing csv")?)?;
    crate::commands::emit(a.csv.as_ref(), &text)?;

    for &alg in &algorithms {
        let mut times: Vec<u128> = records.iter().filter(|r| r.algo == alg.name()).map(|r| r.wall_nanos).collect();
        times.sort_unstable();
        if let Some(median) = times.get(times.len() / 2) {
            eprintln!("{:<14} median {:>10} ns over {} trials", alg.name(), median, times.len());
        }
    }
    if failures.is_empty() {
        Ok(Status::Ok)
    } else {
        for f in &failures {
            eprintln!("verification failed: {f}");
        }
        Ok(Status::VerificationFailed)
    }
}

fn run_with<N: Scalar, S: DbmStorage<N>>(
    a: &BenchArgs,
    algorithms: &[IncrAlgorithm],
) -> Result<(Vec<BenchRecord>, Vec<String>)> {
    let cfg = a.workload.config();
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for trial in 0..a.trials {
        let (constraints, extra) = gen_random::<N>(&cfg, trial);
        let system = System { vars: cfg.vars, constraints };
        let dense = system.to_dbm()?;
        // Generated systems contain the origin, so this never fails.
        let base = canonical_closure(&S::from_dense(&dense), &mut MinCounter::new())?
            .closed()
            .context("generated base system is unsatisfiable")?;
        let o = extra.primary_diff()?;
        let mut aug = base.to_dense();
        aug.add_diff(&o);

        for &alg in algorithms {
            let mut mins = MinCounter::new();
            let start = Instant::now();
            let result = incremental::run(alg, &base, &o, &mut mins)?;
            let wall_nanos = start.elapsed().as_nanos();

            let expected = oracle(alg, &aug)?;
            let got = result.as_closed().map(DbmStorage::to_dense);
            if got.as_ref() != expected.as_closed() {
                failures.push(format!("{alg} trial {trial}: result differs from dense recomputation"));
            }
            let (outcome, checksum) = match result.as_closed() {
                Some(m) => ("closed", checksum(&dump_csv(m))),
                None => ("unsat", "-".to_string()),
            };
            records.push(BenchRecord {
                algo: alg.name(),
                n: cfg.vars,
                trial,
                wall_nanos,
                min_ops: mins.count,
                outcome,
                checksum,
            });
        }
    }
    records.sort_by(|x, y| (x.algo, x.trial).cmp(&(y.algo, y.trial)));
    Ok((records, failures))
}

/// What `alg` must produce on `aug`, computed from scratch on the dense matrix.
fn oracle<N: Scalar>(alg: IncrAlgorithm, aug: &Dbm<N>) -> Result<Outcome<Dbm<N>>> {
    let mut mins = MinCounter::new();
    Ok(match alg {
        IncrAlgorithm::Tight => tight_closure(aug, &mut mins)?,
        _ if alg.strengthens() => match close(aug, &mut mins)? {
            Outcome::Closed(c) => Outcome::Closed(strengthen(&c, &mut mins)?),
            Outcome::Unsat => Outcome::Unsat,
        },
        _ => close(aug, &mut mins)?,
    })
}

/// First 8 bytes of the SHA-256 of `text`, hex encoded.
fn checksum(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest[..8].iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}
