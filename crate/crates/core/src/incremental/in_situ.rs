//! In-place incremental closure. Entries are overwritten as they are
//! computed, so later cells read already-improved values. Any visiting order
//! gives the same closed result as the out-of-place pass; the strong and
//! tight variants need every key cell visited before the rest.
//!
//! On `Unsat` the matrix is left partially updated and must be discarded.

use super::{Edge, TraversalOrder};
use crate::bounds::{MinCounter, NumericMode, Scalar};
use crate::closure::{require_mode, Outcome};
use crate::dbm::{bar, DbmStorage, DiffConstraint};
use crate::error::{OctError, Result};

fn check_order<N: Scalar, S: DbmStorage<N>>(m: &S, order: &TraversalOrder, keys_first: bool) -> Result<()> {
    if order.dim() != m.dim() {
        return Err(OctError::InvalidTraversal(format!(
            "order covers {0}x{0}, matrix is {1}x{1}",
            order.dim(),
            m.dim()
        )));
    }
    if keys_first && !order.is_key_first() {
        return Err(OctError::InvalidTraversal("key cells must come first".into()));
    }
    Ok(())
}

/// In-place [`incr`](super::incr): `16n²` mins unless it stops early.
pub fn incr_in_situ<N: Scalar, S: DbmStorage<N>>(
    m: &mut S,
    o: &DiffConstraint<N>,
    order: &TraversalOrder,
    mins: &mut MinCounter,
) -> Result<Outcome<()>> {
    check_order(m, order, false)?;
    let e = Edge::new(m, o)?;
    for &(i, j) in order.cells() {
        let v = e.close_entry(m, i, j, mins)?;
        if i == j && v.is_negative() {
            return Ok(Outcome::Unsat);
        }
        m.set(i, j, v);
    }
    Ok(Outcome::Closed(()))
}

fn strengthen_rest<N: Scalar, S: DbmStorage<N>>(
    m: &mut S,
    e: &Edge<N>,
    order: &TraversalOrder,
    mins: &mut MinCounter,
) -> Result<Outcome<()>> {
    for &(i, j) in &order.cells()[m.dim()..] {
        let key_i = m.get(i, bar(i)).clone();
        let key_jbar = m.get(bar(j), j).clone();
        let v = e.strengthen_entry(m, i, j, &key_i, &key_jbar, mins)?;
        if i == j && v.is_negative() {
            return Ok(Outcome::Unsat);
        }
        m.set(i, j, v);
    }
    Ok(Outcome::Closed(()))
}

/// In-place [`incr_strong`](super::incr_strong). The order must be key
/// first; otherwise the matrix is left untouched and an error returned.
pub fn incr_strong_in_situ<N: Scalar, S: DbmStorage<N>>(
    m: &mut S,
    o: &DiffConstraint<N>,
    order: &TraversalOrder,
    mins: &mut MinCounter,
) -> Result<Outcome<()>> {
    check_order(m, order, true)?;
    let e = Edge::new(m, o)?;
    for &(i, j) in &order.cells()[..m.dim()] {
        let v = e.close_entry(m, i, j, mins)?;
        m.set(i, j, v);
    }
    strengthen_rest(m, &e, order, mins)
}

/// In-place [`incr_tight`](super::incr_tight), integers only, key-first
/// order required.
pub fn incr_tight_in_situ<N: Scalar, S: DbmStorage<N>>(
    m: &mut S,
    o: &DiffConstraint<N>,
    order: &TraversalOrder,
    mins: &mut MinCounter,
) -> Result<Outcome<()>> {
    require_mode::<N>(NumericMode::CheckedInt)?;
    check_order(m, order, true)?;
    let e = Edge::new(m, o)?;
    for &(i, j) in &order.cells()[..m.dim()] {
        let v = e.close_entry(m, i, j, mins)?.tighten_even();
        m.set(i, j, v);
    }
    for i in 0..m.dim() {
        if m.get(i, bar(i)).add(m.get(bar(i), i))?.is_negative() {
            return Ok(Outcome::Unsat);
        }
    }
    strengthen_rest(m, &e, order, mins)
}
