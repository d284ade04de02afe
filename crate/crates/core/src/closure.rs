//! Non-incremental closure: shortest paths, consistency checks,
//! strengthening and tightening, composed into strong and tight closure.
//!
//! ```text
//!   DBM ──▶ floyd_warshall ──▶ check_consistent ──────────────────────────▶ strengthen ──▶ strongly closed
//!                                   │        └─▶ tighten ──▶ check_integer_consistent ─┘      (tightly closed)
//!                                   ▼                              ▼
//!                                 Unsat                          Unsat
//! ```
//!
//! All functions are generic over [`DbmStorage`] and count binary `min`
//! applications in the supplied [`MinCounter`].

use crate::bounds::{Bound, MinCounter, NumericMode, Scalar};
use crate::dbm::{bar, Dbm, DbmStorage};
use crate::error::{OctError, Result};

/// Result of a closure: the closed matrix, or proof of unsatisfiability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Closed(T),
    Unsat,
}

pub type ClosureOutcome<N> = Outcome<Dbm<N>>;

impl<T> Outcome<T> {
    pub fn is_unsat(&self) -> bool {
        matches!(self, Outcome::Unsat)
    }

    pub fn closed(self) -> Option<T> {
        match self {
            Outcome::Closed(m) => Some(m),
            Outcome::Unsat => None,
        }
    }

    pub fn as_closed(&self) -> Option<&T> {
        match self {
            Outcome::Closed(m) => Some(m),
            Outcome::Unsat => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Closed(m) => Outcome::Closed(f(m)),
            Outcome::Unsat => Outcome::Unsat,
        }
    }
}

pub(crate) fn require_mode<N: Scalar>(expected: NumericMode) -> Result<()> {
    if N::MODE != expected {
        return Err(OctError::ModeMismatch { expected, found: N::MODE });
    }
    Ok(())
}

/// All-pairs shortest paths, textbook `k`-outer order. The diagonal ends up
/// holding the lightest cycle through each node; it is not reset here.
/// Performs exactly `(2n)³` binary mins.
pub fn floyd_warshall<N: Scalar, S: DbmStorage<N>>(m: &S, mins: &mut MinCounter) -> Result<S> {
    let dim = m.dim();
    let mut out = m.clone();
    for k in 0..dim {
        for i in 0..dim {
            let ik = out.get(i, k).clone();
            if ik.is_inf() {
                // Every candidate is +∞; the min cannot change the entry.
                mins.count += dim as u64;
                continue;
            }
            for j in 0..dim {
                let via = ik.add(out.get(k, j))?;
                let cur = out.get(i, j);
                mins.count += 1;
                if via < *cur {
                    out.set(i, j, via);
                }
            }
        }
    }
    Ok(out)
}

/// `Unsat` if some diagonal entry is negative, otherwise the matrix with
/// every diagonal entry set to zero.
pub fn check_consistent<N: Scalar, S: DbmStorage<N>>(mut m: S) -> Outcome<S> {
    for i in 0..m.dim() {
        if m.get(i, i).is_negative() {
            return Outcome::Unsat;
        }
        m.set(i, i, Bound::zero());
    }
    Outcome::Closed(m)
}

/// `m'[i][j] = min(m[i][j], (m[i][bar i] + m[bar j][j]) / 2)`, `4n²` mins.
///
/// In integer mode an odd sum of key entries cannot be halved and is
/// reported as [`OctError::OddIntegerHalving`]; tighten first.
pub fn strengthen<N: Scalar, S: DbmStorage<N>>(m: &S, mins: &mut MinCounter) -> Result<S> {
    let dim = m.dim();
    let mut out = S::unconstrained(m.vars());
    for i in 0..dim {
        let key_i = m.get(i, bar(i));
        for j in 0..dim {
            let via = key_i.add(m.get(bar(j), j))?.halve()?;
            out.set(i, j, mins.min2(m.get(i, j).clone(), via));
        }
    }
    Ok(out)
}

/// Rounds every key entry `(i, bar i)` down to an even value. Other entries
/// are untouched.
pub fn tighten<N: Scalar, S: DbmStorage<N>>(m: &S) -> S {
    let mut out = m.clone();
    for i in 0..m.dim() {
        out.set(i, bar(i), m.get(i, bar(i)).tighten_even());
    }
    out
}

/// `Unsat` iff some pair of opposite unary bounds sums below zero, i.e.
/// `m[i][bar i] + m[bar i][i] < 0`.
pub fn check_integer_consistent<N: Scalar, S: DbmStorage<N>>(m: S) -> Result<Outcome<S>> {
    for i in 0..m.dim() {
        if m.get(i, bar(i)).add(m.get(bar(i), i))?.is_negative() {
            return Ok(Outcome::Unsat);
        }
    }
    Ok(Outcome::Closed(m))
}

/// Closure: shortest paths followed by the consistency check.
pub fn close<N: Scalar, S: DbmStorage<N>>(m: &S, mins: &mut MinCounter) -> Result<Outcome<S>> {
    Ok(check_consistent(floyd_warshall(m, mins)?))
}

/// Strong closure of a coherent DBM.
pub fn strong_closure<N: Scalar, S: DbmStorage<N>>(
    m: &S,
    mins: &mut MinCounter,
) -> Result<Outcome<S>> {
    match close(m, mins)? {
        Outcome::Closed(c) => Ok(Outcome::Closed(strengthen(&c, mins)?)),
        Outcome::Unsat => Ok(Outcome::Unsat),
    }
}

/// Tight closure of a coherent integer DBM.
pub fn tight_closure<N: Scalar, S: DbmStorage<N>>(
    m: &S,
    mins: &mut MinCounter,
) -> Result<Outcome<S>> {
    require_mode::<N>(NumericMode::CheckedInt)?;
    let closed = match close(m, mins)? {
        Outcome::Closed(c) => c,
        Outcome::Unsat => return Ok(Outcome::Unsat),
    };
    match check_integer_consistent(tighten(&closed))? {
        Outcome::Closed(t) => Ok(Outcome::Closed(strengthen(&t, mins)?)),
        Outcome::Unsat => Ok(Outcome::Unsat),
    }
}
