use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use octagon_core::{
    close as fw_close, dump_csv, fast_unsat, incr_in_situ, incr_strong_in_situ, incr_tight_in_situ, incremental,
    parse_constraint, parse_csv, parse_system, strong_closure, tight_closure, DbmStorage, IncrAlgorithm, MinCounter,
    NumericMode, Outcome, Scalar, System, TraversalOrder,
};

use crate::args::{CheckArgs, CloseAlgo, CloseArgs, GenArgs, IncrArgs, OrderSpec};
use crate::Status;

pub fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Writes `text` to `out`, or stdout when absent.
pub fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_outcome<N: Scalar, S: DbmStorage<N>>(out: Option<&PathBuf>, outcome: &Outcome<S>) -> Result<Status> {
    match outcome {
        Outcome::Closed(m) => {
            emit(out, &dump_csv(m))?;
            Ok(Status::Ok)
        }
        Outcome::Unsat => {
            emit(out, "UNSAT\n")?;
            Ok(Status::Unsat)
        }
    }
}

/// Strong closure, or tight closure in integer mode: the form every
/// incremental algorithm expects as input.
pub fn canonical_closure<N: Scalar, S: DbmStorage<N>>(m: &S, mins: &mut MinCounter) -> Result<Outcome<S>> {
    Ok(match N::MODE {
        NumericMode::CheckedInt => tight_closure(m, mins)?,
        _ => strong_closure(m, mins)?,
    })
}

/// Rejects algorithm/mode pairs that cannot run: tight needs integers, and
/// the strong variants halve odd integers.
pub fn check_algorithm(alg: IncrAlgorithm, mode: NumericMode) -> Result<()> {
    let int = mode == NumericMode::CheckedInt;
    match alg {
        IncrAlgorithm::Tight if !int => bail!("--algo tight requires --mode int"),
        IncrAlgorithm::Strong | IncrAlgorithm::StrongReduce if int => {
            bail!("--algo {alg} is not available in int mode; use tight")
        }
        _ => Ok(()),
    }
}

pub fn close(a: CloseArgs) -> Result<Status> {
    if a.algo == CloseAlgo::Tight && a.numeric.mode != NumericMode::CheckedInt {
        bail!("--algo tight requires --mode int");
    }
    let text = read_input(&a.input)?;
    dispatch!(a.numeric.mode, a.numeric.backend, close_with(&a, &text))
}

fn close_with<N: Scalar, S: DbmStorage<N>>(a: &CloseArgs, text: &str) -> Result<Status> {
    let sys = parse_system::<N>(text).with_context(|| format!("parsing {}", a.input.display()))?;
    let m = S::from_dense(&sys.to_dbm()?);
    let mut mins = MinCounter::new();
    let outcome = match a.algo {
        CloseAlgo::Fw => fw_close(&m, &mut mins)?,
        CloseAlgo::Strong => strong_closure(&m, &mut mins)?,
        CloseAlgo::Tight => tight_closure(&m, &mut mins)?,
    };
    emit_outcome(a.out.as_ref(), &outcome)
}

pub fn incr(a: IncrArgs) -> Result<Status> {
    check_algorithm(a.algo, a.numeric.mode)?;
    if a.in_place && !matches!(a.algo, IncrAlgorithm::Closure | IncrAlgorithm::Strong | IncrAlgorithm::Tight) {
        bail!("--in-place supports incr, strong and tight, not {}", a.algo);
    }
    let text = read_input(&a.input)?;
    dispatch!(a.numeric.mode, a.numeric.backend, incr_with(&a, &text))
}

fn incr_with<N: Scalar, S: DbmStorage<N>>(a: &IncrArgs, text: &str) -> Result<Status> {
    let sys = parse_system::<N>(text).with_context(|| format!("parsing {}", a.input.display()))?;
    let c = parse_constraint::<N>(&a.constraint, sys.vars, 1).context("parsing the added constraint")?;
    let Outcome::Closed(base) = canonical_closure(&S::from_dense(&sys.to_dbm()?), &mut MinCounter::new())? else {
        bail!("base system is unsatisfiable; nothing to add to");
    };
    let o = c.primary_diff()?;
    let mut mins = MinCounter::new();
    let outcome = if fast_unsat(&base, &o)? {
        Outcome::Unsat
    } else if a.in_place {
        let n = sys.vars;
        let mut order = match a.order {
            OrderSpec::RowMajor => TraversalOrder::row_major(n),
            OrderSpec::Random(seed) => TraversalOrder::random(n, seed),
        };
        if a.algo.strengthens() {
            order = order.keys_first();
        }
        let mut m = base;
        let done = match a.algo {
            IncrAlgorithm::Strong => incr_strong_in_situ(&mut m, &o, &order, &mut mins)?,
            IncrAlgorithm::Tight => incr_tight_in_situ(&mut m, &o, &order, &mut mins)?,
            _ => incr_in_situ(&mut m, &o, &order, &mut mins)?,
        };
        done.map(|()| m)
    } else {
        incremental::run(a.algo, &base, &o, &mut mins)?
    };
    let status = emit_outcome(a.out.as_ref(), &outcome)?;
    if a.count_mins {
        println!("min_ops={}", mins.count);
    }
    Ok(status)
}

pub fn check(a: CheckArgs) -> Result<Status> {
    let text = read_input(&a.input)?;
    let flags = match a.mode {
        NumericMode::ExactRational => parse_csv::<num::rational::BigRational>(&text)?.classify(),
        NumericMode::CheckedInt => parse_csv::<i64>(&text)?.classify(),
        NumericMode::BinaryFloat64 => parse_csv::<octagon_core::F64>(&text)?.classify(),
    };
    println!("{flags}");
    Ok(Status::Ok)
}

pub fn gen(a: GenArgs) -> Result<Status> {
    let cfg = a.workload.config();
    let (constraints, extra) = octagon_core::gen_random::<i64>(&cfg, a.trial);
    let mut text = System { vars: cfg.vars, constraints }.to_text();
    text.push_str(&format!("# extra: {extra}\n"));
    emit(a.out.as_ref(), &text)?;
    Ok(Status::Ok)
}
