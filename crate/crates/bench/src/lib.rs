//! Fixtures shared by the criterion benches.

use num::rational::BigRational;
use octagon_core::{
    gen_random, strong_closure, tight_closure, BenchConfig, DbmStorage, DiffConstraint, MinCounter, Scalar, System,
};

pub type Q = BigRational;

/// The variable counts every bench sweeps.
pub const SIZES: &[usize] = &[8, 16, 32];

pub fn config(vars: usize) -> BenchConfig {
    BenchConfig { vars, constraints: 2 * vars, seed: 7, ..BenchConfig::default() }
}

/// A strongly closed random base (tightly closed for `i64`) and the
/// constraint to add to it.
pub fn closed_case<N: Scalar, S: DbmStorage<N>>(vars: usize) -> (S, DiffConstraint<N>) {
    let (constraints, extra) = gen_random::<N>(&config(vars), 0);
    let dense = System { vars, constraints }.to_dbm().expect("in range");
    let m = S::from_dense(&dense);
    let mut mins = MinCounter::new();
    let closed = match N::MODE {
        octagon_core::NumericMode::CheckedInt => tight_closure(&m, &mut mins),
        _ => strong_closure(&m, &mut mins),
    };
    let base = closed.expect("no overflow").closed().expect("origin is a solution");
    (base, extra.primary_diff().expect("small bound"))
}

/// The unclosed matrix of a random system.
pub fn raw_case<N: Scalar, S: DbmStorage<N>>(vars: usize) -> S {
    let (constraints, _) = gen_random::<N>(&config(vars), 0);
    S::from_dense(&System { vars, constraints }.to_dbm().expect("in range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use octagon_core::{CoDbm, Dbm};

    #[test]
    fn backends_build_the_same_case() {
        let (d, od) = closed_case::<Q, Dbm<Q>>(6);
        let (c, oc) = closed_case::<Q, CoDbm<Q>>(6);
        assert_eq!(od, oc);
        assert_eq!(d, c.to_dense());
        assert!(d.classify().strongly_closed);
    }
}
