//! Compact DBM: a coherent half matrix of handles into a per-matrix cache of
//! distinct bound values.
//!
//! Cell `(i, j)` is stored once per coherence class. Row `i` of the half
//! matrix holds columns `0..=i` plus the key cell `(i, bar i)`, so row
//! lengths run 2, 2, 4, 4, 6, 6, ... and start at `⌊(i+1)²/2⌋`:
//!
//! ```text
//!   row 0: (0,0) (0,1)                  offset 0
//!   row 1: (1,0) (1,1)                  offset 2
//!   row 2: (2,0) (2,1) (2,2) (2,3)      offset 4
//!   row 3: (3,0) (3,1) (3,2) (3,3)      offset 8
//! ```
//!
//! Diagonal cells `(i, i)` and `(bar i, bar i)` are kept apart.

use std::fmt;

use crate::bounds::{Bound, MinCounter, Scalar};
use crate::closure::{strong_closure, Outcome};
use crate::dbm::{bar, Dbm, DbmStorage, DiffConstraint};
use crate::error::Result;
use crate::incremental::{self, IncrAlgorithm};

/// Index of a value in a [`CoDbm`]'s cache. Handle 0 is always `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CacheHandle(u32);

impl CacheHandle {
    pub const INF: CacheHandle = CacheHandle(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Linear position of `(i, j)` in the half matrix.
pub const fn half_index(i: usize, j: usize) -> usize {
    if i >= j || i == bar(j) {
        j + (i + 1) * (i + 1) / 2
    } else {
        half_index(bar(j), bar(i))
    }
}

/// Number of cells for `n` variables.
pub const fn half_len(n: usize) -> usize {
    2 * n * (n + 1)
}

#[derive(Clone)]
pub struct CoDbm<N> {
    n: usize,
    cells: Vec<CacheHandle>,
    cache: Vec<Bound<N>>,
    // Sorted by value, for bisection.
    index: Vec<(Bound<N>, CacheHandle)>,
}

impl<N: Scalar> CoDbm<N> {
    pub fn top(n: usize) -> Self {
        let mut c = Self::unconstrained(n);
        let zero = c.intern(Bound::zero());
        for i in 0..2 * n {
            c.cells[half_index(i, i)] = zero;
        }
        c
    }

    /// Returns the handle for `b`, adding it to the cache if new.
    pub fn intern(&mut self, b: Bound<N>) -> CacheHandle {
        match self.index.binary_search_by(|(v, _)| v.cmp(&b)) {
            Ok(pos) => self.index[pos].1,
            Err(pos) => {
                let h = CacheHandle(u32::try_from(self.cache.len()).expect("cache exceeds u32 handles"));
                self.cache.push(b.clone());
                self.index.insert(pos, (b, h));
                h
            }
        }
    }

    pub fn resolve(&self, h: CacheHandle) -> &Bound<N> {
        &self.cache[h.index()]
    }

    pub fn handle(&self, i: usize, j: usize) -> CacheHandle {
        self.cells[half_index(i, j)]
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Number of cached values, `+∞` included.
    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }
}

impl<N: Scalar> DbmStorage<N> for CoDbm<N> {
    fn vars(&self) -> usize {
        self.n
    }

    fn get(&self, i: usize, j: usize) -> &Bound<N> {
        self.resolve(self.handle(i, j))
    }

    /// Writes `(i, j)` and, through the shared cell, its coherent mirror.
    fn set(&mut self, i: usize, j: usize, b: Bound<N>) {
        let h = self.intern(b);
        self.cells[half_index(i, j)] = h;
    }

    fn unconstrained(n: usize) -> Self {
        CoDbm {
            n,
            cells: vec![CacheHandle::INF; half_len(n)],
            cache: vec![Bound::PosInf],
            index: vec![(Bound::PosInf, CacheHandle::INF)],
        }
    }

    /// Copies the canonical cells of a dense matrix. The mirror half of a
    /// non-coherent input is lost.
    fn from_dense(m: &Dbm<N>) -> Self {
        let n = m.vars();
        let mut c = Self::unconstrained(n);
        for i in 0..2 * n {
            for j in 0..2 * n {
                if i >= j || i == bar(j) {
                    let h = c.intern(m.get(i, j).clone());
                    c.cells[half_index(i, j)] = h;
                }
            }
        }
        c
    }
}

impl<N: Scalar> PartialEq for CoDbm<N> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.cells.iter().zip(&other.cells).all(|(a, b)| self.resolve(*a) == other.resolve(*b))
    }
}

impl<N: Scalar> Eq for CoDbm<N> {}

impl<N: Scalar> fmt::Debug for CoDbm<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoDbm(cache {}) ", self.cache.len())?;
        fmt::Debug::fmt(&self.to_dense(), f)
    }
}

/// What [`run_over`] executes.
#[derive(Clone, Debug)]
pub enum Pipeline<N> {
    StrongClosure,
    Incremental(IncrAlgorithm, DiffConstraint<N>),
}

/// Runs a dense algorithm through the compact storage.
pub fn run_over<N: Scalar>(
    c: &CoDbm<N>,
    pipeline: &Pipeline<N>,
    mins: &mut MinCounter,
) -> Result<Outcome<CoDbm<N>>> {
    match pipeline {
        Pipeline::StrongClosure => strong_closure(c, mins),
        Pipeline::Incremental(alg, o) => incremental::run(*alg, c, o, mins),
    }
}
