//! Incremental closure: restoring (strong, tight) closure after a single
//! difference constraint `x'_a - x'_b ≤ d` is added to a closed DBM.
//!
//! Every entry of the result is a `min` over five paths in the *input*
//! matrix: the old bound, the two paths through the new edge
//! `a → b` or its mirror `b̄ → ā`, and the two paths through both edges
//! joined by a unary edge (`ā → a` or `b → b̄`):
//!
//! ```text
//!   m[i][j]
//!   m[i][a] + d + m[b][j]
//!   m[i][b̄] + d + m[ā][j]
//!   m[i][b̄] + d + m[ā][a] + d + m[b][j]
//!   m[i][a] + d + m[b][b̄] + d + m[ā][j]
//! ```
//!
//! That makes a single pass quadratic instead of the cubic tail of
//! Floyd–Warshall used by [`incr_mine`]. The strong and tight variants first
//! compute the `2n` key entries `(i, bar i)` and then strengthen every other
//! entry on the fly.
//!
//! Out-of-place algorithms read only `m` and build a fresh output; the
//! in-place variants live in [`in_situ`].

mod in_situ;
mod order;

pub use in_situ::{incr_in_situ, incr_strong_in_situ, incr_tight_in_situ};
pub use order::TraversalOrder;

use std::fmt;
use std::str::FromStr;

use crate::bounds::{path_sum, Bound, MinCounter, NumericMode, Scalar};
use crate::closure::{check_consistent, require_mode, Outcome};
use crate::dbm::{bar, DbmStorage, DiffConstraint, OctConstraint};
use crate::error::{OctError, Result};

/// The incremental algorithms, by command-line name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IncrAlgorithm {
    /// Tail of Floyd–Warshall from the smallest touched index.
    Mine,
    /// Quadratic five-path closure.
    Closure,
    /// Five-path closure with per-row hoisting.
    Hoisted,
    /// Closure fused with strengthening.
    Strong,
    /// Strong closure variant for strongly closed inputs, without the
    /// key-entry guard.
    StrongReduce,
    /// Closure fused with tightening and strengthening (integers).
    Tight,
}

impl IncrAlgorithm {
    pub const ALL: [IncrAlgorithm; 6] = [
        IncrAlgorithm::Mine,
        IncrAlgorithm::Closure,
        IncrAlgorithm::Hoisted,
        IncrAlgorithm::Strong,
        IncrAlgorithm::StrongReduce,
        IncrAlgorithm::Tight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IncrAlgorithm::Mine => "mine",
            IncrAlgorithm::Closure => "incr",
            IncrAlgorithm::Hoisted => "hoist",
            IncrAlgorithm::Strong => "strong",
            IncrAlgorithm::StrongReduce => "strong-reduce",
            IncrAlgorithm::Tight => "tight",
        }
    }

    /// Whether the result is strongly (or tightly) closed rather than just
    /// closed.
    pub fn strengthens(self) -> bool {
        matches!(self, IncrAlgorithm::Strong | IncrAlgorithm::StrongReduce | IncrAlgorithm::Tight)
    }

    /// Exact number of binary mins on a run that completes without an early
    /// `Unsat` exit. `None` for [`IncrAlgorithm::Mine`], whose count depends
    /// on the constraint's indices.
    pub fn expected_mins(self, n: usize) -> Option<u64> {
        let n = n as u64;
        match self {
            IncrAlgorithm::Mine => None,
            IncrAlgorithm::Closure => Some(16 * n * n),
            IncrAlgorithm::Hoisted => Some(8 * n * n + 4 * n),
            IncrAlgorithm::Strong | IncrAlgorithm::Tight => Some(20 * n * n - 2 * n),
            IncrAlgorithm::StrongReduce => Some(20 * n * n + 2 * n),
        }
    }
}

impl fmt::Display for IncrAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IncrAlgorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        IncrAlgorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// Per-run instrumentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IncrStats {
    pub algorithm: IncrAlgorithm,
    pub min_ops: MinCounter,
    pub fast_unsat_hits: u64,
}

/// The added constraint with its four endpoints pre-resolved.
#[derive(Clone, Debug)]
pub(crate) struct Edge<N> {
    pub a: usize,
    pub b: usize,
    pub abar: usize,
    pub bbar: usize,
    pub d: Bound<N>,
}

impl<N: Scalar> Edge<N> {
    pub fn new<S: DbmStorage<N>>(m: &S, o: &DiffConstraint<N>) -> Result<Self> {
        let dim = m.dim();
        if o.a >= dim || o.b >= dim {
            return Err(OctError::VariableOutOfRange { var: o.a.max(o.b) / 2, n: m.vars() });
        }
        Ok(Edge { a: o.a, b: o.b, abar: bar(o.a), bbar: bar(o.b), d: Bound::Finite(o.d.clone()) })
    }

    /// The five candidate path lengths for entry `(i, j)`, read from `m`.
    #[inline]
    pub fn paths<S: DbmStorage<N>>(&self, m: &S, i: usize, j: usize) -> Result<[Bound<N>; 5]> {
        let d = &self.d;
        Ok([
            m.get(i, j).clone(),
            path_sum([m.get(i, self.a), d, m.get(self.b, j)])?,
            path_sum([m.get(i, self.bbar), d, m.get(self.abar, j)])?,
            path_sum([m.get(i, self.bbar), d, m.get(self.abar, self.a), d, m.get(self.b, j)])?,
            path_sum([m.get(i, self.a), d, m.get(self.b, self.bbar), d, m.get(self.abar, j)])?,
        ])
    }

    /// Quintic min for `(i, j)`: four binary mins.
    #[inline]
    pub fn close_entry<S: DbmStorage<N>>(
        &self,
        m: &S,
        i: usize,
        j: usize,
        mins: &mut MinCounter,
    ) -> Result<Bound<N>> {
        Ok(mins.min_of(self.paths(m, i, j)?))
    }

    /// Sextic min for a non-key entry: the quintic min plus the
    /// strengthening term `(key_i + key_jbar) / 2`. Five binary mins.
    #[inline]
    pub fn strengthen_entry<S: DbmStorage<N>>(
        &self,
        m: &S,
        i: usize,
        j: usize,
        key_i: &Bound<N>,
        key_jbar: &Bound<N>,
        mins: &mut MinCounter,
    ) -> Result<Bound<N>> {
        let [p0, p1, p2, p3, p4] = self.paths(m, i, j)?;
        let half = key_i.add(key_jbar)?.halve()?;
        Ok(mins.min_of([p0, p1, p2, p3, p4, half]))
    }
}

/// Incremental closure by resuming Floyd–Warshall at iteration
/// `v = min(a, b, ā, b̄)`: `(2n - v)·4n²` mins.
pub fn incr_mine<N: Scalar, S: DbmStorage<N>>(
    m: &S,
    o: &DiffConstraint<N>,
    mins: &mut MinCounter,
) -> Result<Outcome<S>> {
    let e = Edge::new(m, o)?;
    let dim = m.dim();
    let mut out = m.clone();
    for (i, j) in [(e.a, e.b), (e.bbar, e.abar)] {
        if e.d < *out.get(i, j) {
            out.set(i, j, e.d.clone());
        }
    }
    let v = e.a.min(e.b).min(e.abar).min(e.bbar);
    for k in v..dim {
        for i in 0..dim {
            let ik = out.get(i, k).clone();
            for j in 0..dim {
                let via = ik.add(out.get(k, j))?;
                mins.count += 1;
                if via < *out.get(i, j) {
                    out.set(i, j, via);
                }
            }
        }
    }
    Ok(check_consistent(out))
}

/// Quadratic incremental closure: every entry takes the quintic min over the
/// input, then the diagonal is checked. Exactly `16n²` mins.
pub fn incr<N: Scalar, S: DbmStorage<N>>(
    m: &S,
    o: &DiffConstraint<N>,
    mins: &mut MinCounter,
) -> Result<Outcome<S>> {
    let e = Edge::new(m, o)?;
    let dim = m.dim();
    let mut out = S::unconstrained(m.vars());
    for i in 0..dim {
        for j in 0..dim {
            out.set(i, j, e.close_entry(m, i, j, mins)?);
        }
    }
    Ok(check_consistent(out))
}

/// [`incr`] with the row-invariant parts of the quintic min hoisted out of
/// the inner loop; `8n² + 4n` mins when no row exits early.
pub fn incr_hoisted<N: Scalar, S: DbmStorage<N>>(
    m: &S,
    o: &DiffConstraint<N>,
    mins: &mut MinCounter,
) -> Result<Outcome<S>> {
    let e = Edge::new(m, o)?;
    let d = &e.d;
    let dim = m.dim();
    let t1 = path_sum([d, m.get(e.abar, e.a), d])?;
    let t2 = path_sum([d, m.get(e.b, e.bbar), d])?;
    let mut out = S::unconstrained(m.vars());
    for i in 0..dim {
        let t3 = mins.min2(m.get(i, e.a).add(d)?, m.get(i, e.bbar).add(&t1)?);
        let t4 = mins.min2(m.get(i, e.bbar).add(d)?, m.get(i, e.a).add(&t2)?);
        for j in 0..dim {
            let via_b = t3.add(m.get(e.b, j))?;
            let via_abar = t4.add(m.get(e.abar, j))?;
            out.set(i, j, mins.min_of([m.get(i, j).clone(), via_b, via_abar]));
        }
        if out.get(i, i).is_negative() {
            return Ok(Outcome::Unsat);
        }
    }
    Ok(Outcome::Closed(out))
}

/// True when adding `o` to the closed DBM `m` is certainly unsatisfiable.
/// Uses no min operations.
pub fn fast_unsat<N: Scalar, S: DbmStorage<N>>(m: &S, o: &DiffConstraint<N>) -> Result<bool> {
    let e = Edge::new(m, o)?;
    let d = &e.d;
    Ok(m.get(e.b, e.a).add(d)?.is_negative()
        || m.get(e.abar, e.bbar).add(d)?.is_negative()
        || path_sum([m.get(e.b, e.bbar), d, m.get(e.abar, e.a), d])?.is_negative())
}

/// Phase-two loop shared by the strong and tight variants: every non-key
/// entry takes the sextic min against the cached key entries; rows are
/// checked for a negative diagonal as they complete.
fn strengthen_non_keys<N: Scalar, S: DbmStorage<N>>(
    m: &S,
    e: &Edge<N>,
    keys: &[Bound<N>],
    mut out: S,
    mins: &mut MinCounter,
) -> Result<Outcome<S>> {
    let dim = m.dim();
    for (i, key) in keys.iter().enumerate() {
        out.set(i, bar(i), key.clone());
    }
    for i in 0..dim {
        for j in 0..dim {
            if j != bar(i) {
                let v = e.strengthen_entry(m, i, j, &keys[i], &keys[bar(j)], mins)?;
                out.set(i, j, v);
            }
        }
        if out.get(i, i).is_negative() {
            return Ok(Outcome::Unsat);
        }
    }
    Ok(Outcome::Closed(out))
}

/// Incremental strong closure. Computes the `2n` key entries first, then
/// closes and strengthens the rest in one pass: `20n² - 2n` mins.
///
/// Requires exact halving, so in integer mode use [`incr_tight`].
pub fn incr_strong<N: Scalar, S: DbmStorage<N>>(
    m: &S,
    o: &DiffConstraint<N>,
    mins: &mut MinCounter,
) -> Result<Outcome<S>> {
    let e = Edge::new(m, o)?;
    let keys = (0..m.dim())
        .map(|i| e.close_entry(m, i, bar(i), mins))
        .collect::<Result<Vec<_>>>()?;
    strengthen_non_keys(m, &e, &keys, S::unconstrained(m.vars()), mins)
}

/// Incremental strong closure for a *strongly closed* input. The key pass
/// only considers the direct path through `a → b`; the main loop then runs
/// the sextic min over every entry, keys included, reading keys from the
/// output as it fills in. `20n² + 2n` mins.
pub fn incr_strong_reduce<N: Scalar, S: DbmStorage<N>>(
    m: &S,
    o: &DiffConstraint<N>,
    mins: &mut MinCounter,
) -> Result<Outcome<S>> {
    let e = Edge::new(m, o)?;
    let dim = m.dim();
    let mut out = S::unconstrained(m.vars());
    for i in 0..dim {
        let via = path_sum([m.get(i, e.a), &e.d, m.get(e.b, bar(i))])?;
        out.set(i, bar(i), mins.min2(m.get(i, bar(i)).clone(), via));
    }
    for i in 0..dim {
        for j in 0..dim {
            let key_i = out.get(i, bar(i)).clone();
            let key_jbar = out.get(bar(j), j).clone();
            let v = e.strengthen_entry(m, i, j, &key_i, &key_jbar, mins)?;
            out.set(i, j, v);
        }
        if out.get(i, i).is_negative() {
            return Ok(Outcome::Unsat);
        }
    }
    Ok(Outcome::Closed(out))
}

/// Incremental tight closure over the integers: key entries are tightened to
/// even values as they are computed, checked for integer consistency, and
/// then used to strengthen the rest. `20n² - 2n` mins.
pub fn incr_tight<N: Scalar, S: DbmStorage<N>>(
    m: &S,
    o: &DiffConstraint<N>,
    mins: &mut MinCounter,
) -> Result<Outcome<S>> {
    require_mode::<N>(NumericMode::CheckedInt)?;
    let e = Edge::new(m, o)?;
    let dim = m.dim();
    let keys = (0..dim)
        .map(|i| Ok(e.close_entry(m, i, bar(i), mins)?.tighten_even()))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..dim {
        if keys[i].add(&keys[bar(i)])?.is_negative() {
            return Ok(Outcome::Unsat);
        }
    }
    strengthen_non_keys(m, &e, &keys, S::unconstrained(m.vars()), mins)
}

/// Runs one of the out-of-place algorithms.
pub fn run<N: Scalar, S: DbmStorage<N>>(
    algorithm: IncrAlgorithm,
    m: &S,
    o: &DiffConstraint<N>,
    mins: &mut MinCounter,
) -> Result<Outcome<S>> {
    match algorithm {
        IncrAlgorithm::Mine => incr_mine(m, o, mins),
        IncrAlgorithm::Closure => incr(m, o, mins),
        IncrAlgorithm::Hoisted => incr_hoisted(m, o, mins),
        IncrAlgorithm::Strong => incr_strong(m, o, mins),
        IncrAlgorithm::StrongReduce => incr_strong_reduce(m, o, mins),
        IncrAlgorithm::Tight => incr_tight(m, o, mins),
    }
}

/// [`run`] with fresh instrumentation.
pub fn run_with_stats<N: Scalar, S: DbmStorage<N>>(
    algorithm: IncrAlgorithm,
    m: &S,
    o: &DiffConstraint<N>,
) -> Result<(Outcome<S>, IncrStats)> {
    let mut mins = MinCounter::new();
    let out = run(algorithm, m, o, &mut mins)?;
    Ok((out, IncrStats { algorithm, min_ops: mins, fast_unsat_hits: 0 }))
}

/// Adds an octagonal constraint to a closed DBM with the given algorithm.
/// A binary constraint's two difference forms are mirrors of each other, so
/// only the first is passed on.
pub fn add_octagonal<N: Scalar, S: DbmStorage<N>>(
    algorithm: IncrAlgorithm,
    m: &S,
    c: &OctConstraint<N>,
    mins: &mut MinCounter,
) -> Result<Outcome<S>> {
    if c.max_var() >= m.vars() {
        return Err(OctError::VariableOutOfRange { var: c.max_var(), n: m.vars() });
    }
    run(algorithm, m, &c.primary_diff()?, mins)
}
