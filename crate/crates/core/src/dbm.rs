//! Difference bound matrices representing octagons.
//!
//! Each program variable `x_k` is split into two extended variables,
//! `x'_{2k} = x_k` and `x'_{2k+1} = -x_k`. Entry `(i, j)` of a DBM over `n`
//! variables bounds `x'_i - x'_j`, so the matrix has dimension `2n × 2n`.

use std::fmt;
use std::ops::Index;

use num::rational::BigRational;
use num::Zero;

use crate::bounds::{Bound, NumericMode, Scalar};
use crate::error::{OctError, Result};

/// The index paired with `i`: `x'_{bar(i)} = -x'_i`.
#[inline(always)]
pub const fn bar(i: usize) -> usize {
    i ^ 1
}

/// `i` is a key-entry row/column pair, i.e. `(i, bar(i))`.
#[inline(always)]
pub const fn is_key(i: usize, j: usize) -> bool {
    j == bar(i)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Extended index of the signed occurrence `sign · x_var`.
#[inline]
pub const fn signed_index(sign: Sign, var: usize) -> usize {
    match sign {
        Sign::Plus => 2 * var,
        Sign::Minus => 2 * var + 1,
    }
}

/// An octagonal inequality `±x_i ± x_j ≤ d` or `±x_i ≤ d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OctConstraint<N> {
    Binary { sign_i: Sign, i: usize, sign_j: Sign, j: usize, d: N },
    Unary { sign: Sign, i: usize, d: N },
}

impl<N: Scalar> OctConstraint<N> {
    pub fn binary(sign_i: Sign, i: usize, sign_j: Sign, j: usize, d: N) -> Self {
        OctConstraint::Binary { sign_i, i, sign_j, j, d }
    }

    pub fn unary(sign: Sign, i: usize, d: N) -> Self {
        OctConstraint::Unary { sign, i, d }
    }

    /// Largest variable index mentioned.
    pub fn max_var(&self) -> usize {
        match self {
            OctConstraint::Binary { i, j, .. } => (*i).max(*j),
            OctConstraint::Unary { i, .. } => *i,
        }
    }

    pub fn bound(&self) -> &N {
        match self {
            OctConstraint::Binary { d, .. } | OctConstraint::Unary { d, .. } => d,
        }
    }

    /// The difference constraints over extended variables encoding this
    /// inequality. Binary constraints yield a coherence-mirrored pair, unary
    /// ones a single key-entry constraint with doubled bound.
    pub fn translate(&self) -> Result<Vec<DiffConstraint<N>>> {
        match self {
            OctConstraint::Binary { sign_i, i, sign_j, j, d } => {
                let a = signed_index(*sign_i, *i);
                let b = bar(signed_index(*sign_j, *j));
                Ok(vec![
                    DiffConstraint { a, b, d: d.clone() },
                    DiffConstraint { a: bar(b), b: bar(a), d: d.clone() },
                ])
            }
            OctConstraint::Unary { sign, i, d } => {
                let a = signed_index(*sign, *i);
                let twice = d.checked_add(d).ok_or_else(|| OctError::Overflow {
                    lhs: d.to_string(),
                    rhs: d.to_string(),
                })?;
                Ok(vec![DiffConstraint { a, b: bar(a), d: twice }])
            }
        }
    }

    /// Difference constraint handed to the incremental algorithms. Either
    /// half of a binary pair works, since they are coherence mirrors.
    pub fn primary_diff(&self) -> Result<DiffConstraint<N>> {
        Ok(self.translate()?.swap_remove(0))
    }
}

impl<N: Scalar> fmt::Display for OctConstraint<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lead = |s: Sign| if s == Sign::Minus { "-" } else { "" };
        match self {
            OctConstraint::Binary { sign_i, i, sign_j, j, d } => {
                write!(f, "{}x{i} {} x{j} <= {d}", lead(*sign_i), sign_j.as_str())
            }
            OctConstraint::Unary { sign, i, d } => write!(f, "{}x{i} <= {d}", lead(*sign)),
        }
    }
}

/// `x'_a - x'_b ≤ d` over extended variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffConstraint<N> {
    pub a: usize,
    pub b: usize,
    pub d: N,
}

impl<N: Scalar> DiffConstraint<N> {
    pub fn new(a: usize, b: usize, d: N) -> Self {
        DiffConstraint { a, b, d }
    }

    /// The same constraint written from the mirrored side.
    pub fn mirror(&self) -> Self {
        DiffConstraint { a: bar(self.b), b: bar(self.a), d: self.d.clone() }
    }
}

/// Read/write access to a DBM, independent of how entries are stored.
///
/// Every closure algorithm in this crate is written against this trait, so
/// the dense [`Dbm`] and the compact [`crate::codbm::CoDbm`] run exactly the
/// same code.
pub trait DbmStorage<N: Scalar>: Clone {
    /// Number of program variables `n`.
    fn vars(&self) -> usize;

    fn dim(&self) -> usize {
        2 * self.vars()
    }

    fn get(&self, i: usize, j: usize) -> &Bound<N>;

    /// Writes entry `(i, j)`. Storages that share one cell between coherence
    /// mirrors also change `(bar(j), bar(i))`.
    fn set(&mut self, i: usize, j: usize, b: Bound<N>);

    /// A matrix of the given size with every entry `+∞`.
    fn unconstrained(n: usize) -> Self;

    /// Copy of a dense matrix in this storage.
    fn from_dense(m: &Dbm<N>) -> Self;

    fn to_dense(&self) -> Dbm<N> {
        let dim = self.dim();
        let mut out = Dbm::unconstrained(self.vars());
        for i in 0..dim {
            for j in 0..dim {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        out
    }
}

/// Dense square DBM, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Dbm<N> {
    n: usize,
    entries: Vec<Bound<N>>,
}

impl<N: Scalar> Dbm<N> {
    /// The unconstrained octagon: `+∞` off the diagonal, zero on it.
    ///
    /// # Panics
    ///
    /// If `n == 0`.
    pub fn top(n: usize) -> Self {
        assert!(n >= 1, "a DBM needs at least one variable");
        let mut m = Self::unconstrained(n);
        for i in 0..2 * n {
            m.set(i, i, Bound::zero());
        }
        m
    }

    /// Builds a DBM from explicit rows. The row count must be even and every
    /// row must have the same length as the number of rows.
    pub fn from_rows(rows: Vec<Vec<Bound<N>>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(OctError::MalformedMatrix(format!("dimension {dim} is not a positive even number")));
        }
        if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != dim) {
            return Err(OctError::MalformedMatrix(format!(
                "row {r} has {} entries, expected {dim}",
                row.len()
            )));
        }
        Ok(Dbm { n: dim / 2, entries: rows.into_iter().flatten().collect() })
    }

    /// Convenience for tests and fixtures: integers with `None` for `+∞`.
    pub fn from_ints(rows: &[&[Option<i64>]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|v| v.map_or(Bound::PosInf, Bound::int)).collect())
                .collect(),
        )
    }

    /// Encodes a system of octagonal constraints. Entries not mentioned by
    /// any constraint, including the diagonal, stay `+∞`; closure later
    /// establishes the zero diagonal.
    pub fn from_constraints(n: usize, cs: &[OctConstraint<N>]) -> Result<Self> {
        let mut m = Self::unconstrained(n);
        for c in cs {
            m.add_constraint(c)?;
        }
        Ok(m)
    }

    /// Meets `c` into the matrix without closing it.
    pub fn add_constraint(&mut self, c: &OctConstraint<N>) -> Result<()> {
        if c.max_var() >= self.n {
            return Err(OctError::VariableOutOfRange { var: c.max_var(), n: self.n });
        }
        for dc in c.translate()? {
            self.add_diff(&dc);
        }
        Ok(())
    }

    /// Tightens `(a, b)` and its mirror to at most `d`.
    pub fn add_diff(&mut self, dc: &DiffConstraint<N>) {
        let d = Bound::Finite(dc.d.clone());
        if d < self[(dc.a, dc.b)] {
            self.set_coherent(dc.a, dc.b, d);
        }
    }

    pub fn mode(&self) -> NumericMode {
        N::MODE
    }

    /// Writes `b` at `(i, j)` and at its mirror `(bar(j), bar(i))`.
    pub fn set_coherent(&mut self, i: usize, j: usize, b: Bound<N>) {
        self.set(bar(j), bar(i), b.clone());
        self.set(i, j, b);
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Bound<N>]> {
        self.entries.chunks(self.dim())
    }

    /// Pointwise `self ≤ other`.
    pub fn le_pointwise(&self, other: &Self) -> Result<bool> {
        self.check_same_size(other)?;
        Ok(self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b))
    }

    fn check_same_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(OctError::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    /// Property flags, evaluated by brute force over all index triples in
    /// exact rational arithmetic.
    pub fn classify(&self) -> DbmProperties {
        classify(self)
    }

    /// Does the point `p` (one rational coordinate per variable) satisfy
    /// every constraint of the matrix?
    ///
    /// # Panics
    ///
    /// If `p.len() != n`.
    pub fn gamma_contains(&self, p: &[BigRational]) -> bool {
        assert_eq!(p.len(), self.n, "point has wrong arity");
        let ext: Vec<BigRational> = p.iter().flat_map(|v| [v.clone(), -v.clone()]).collect();
        let dim = self.dim();
        (0..dim).all(|i| {
            (0..dim).all(|j| match self[(i, j)].to_rational() {
                None => true,
                Some(c) => &ext[i] - &ext[j] <= c,
            })
        })
    }
}

impl<N: Scalar> DbmStorage<N> for Dbm<N> {
    fn vars(&self) -> usize {
        self.n
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> &Bound<N> {
        &self.entries[i * 2 * self.n + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, b: Bound<N>) {
        let dim = 2 * self.n;
        self.entries[i * dim + j] = b;
    }

    fn unconstrained(n: usize) -> Self {
        Dbm { n, entries: vec![Bound::PosInf; 4 * n * n] }
    }

    fn from_dense(m: &Dbm<N>) -> Self {
        m.clone()
    }

    fn to_dense(&self) -> Dbm<N> {
        self.clone()
    }
}

impl<N: Scalar> Index<(usize, usize)> for Dbm<N> {
    type Output = Bound<N>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Bound<N> {
        self.get(i, j)
    }
}

impl<N: Scalar> fmt::Debug for Dbm<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Dbm({} vars, {} mode)", self.n, N::MODE)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|b| format!("{b:>5}")).collect();
            writeln!(f, "  [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Pointwise equality of two DBMs of the same size.
pub fn dbm_equal<N: Scalar>(m1: &Dbm<N>, m2: &Dbm<N>) -> Result<bool> {
    m1.check_same_size(m2)?;
    Ok(m1 == m2)
}

/// Which of the closure-related definitions a DBM satisfies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DbmProperties {
    pub coherent: bool,
    pub consistent: bool,
    pub closed: bool,
    pub strongly_closed: bool,
    pub weakly_closed: bool,
    pub tightly_closed: bool,
}

impl fmt::Display for DbmProperties {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "coherent={}", self.coherent)?;
        writeln!(f, "consistent={}", self.consistent)?;
        writeln!(f, "closed={}", self.closed)?;
        writeln!(f, "strongly_closed={}", self.strongly_closed)?;
        writeln!(f, "weakly_closed={}", self.weakly_closed)?;
        write!(f, "tightly_closed={}", self.tightly_closed)
    }
}

// Exact view used by the oracle: `None` is +∞.
type Ext = Option<BigRational>;

fn ext_add(a: &Ext, b: &Ext) -> Ext {
    Some(a.as_ref()? + b.as_ref()?)
}

fn ext_le(a: &Ext, b: &Ext) -> bool {
    match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x <= y,
    }
}

fn ext_half(a: &Ext) -> Ext {
    a.as_ref().map(|v| v / BigRational::from_integer(2.into()))
}

/// Brute-force evaluation of every property definition. Intended as a test
/// oracle; cubic in the dimension and done in exact arithmetic regardless
/// of the DBM's mode.
pub fn classify<N: Scalar>(m: &Dbm<N>) -> DbmProperties {
    let dim = m.dim();
    let e: Vec<Ext> = m.entries.iter().map(Bound::to_rational).collect();
    let at = |i: usize, j: usize| &e[i * dim + j];
    let idx = || (0..dim).flat_map(move |i| (0..dim).map(move |j| (i, j)));

    let coherent = idx().all(|(i, j)| at(i, j) == at(bar(j), bar(i)));
    let consistent = (0..dim).all(|i| at(i, i).as_ref().is_none_or(|v| *v >= <BigRational as Zero>::zero()));
    let zero_diag = (0..dim).all(|i| at(i, i).as_ref().is_some_and(Zero::is_zero));
    let triangle = idx().all(|(i, j)| (0..dim).all(|k| ext_le(at(i, j), &ext_add(at(i, k), at(k, j)))));
    let closed = zero_diag && triangle;

    let half_sum = |i: usize, j: usize| ext_add(&ext_half(at(i, bar(i))), &ext_half(at(bar(j), j)));
    let strong_bound = idx().all(|(i, j)| ext_le(at(i, j), &half_sum(i, j)));
    let strongly_closed = closed && strong_bound;

    let weakly_closed = zero_diag
        && idx().all(|(i, j)| {
            let hs = half_sum(i, j);
            let floor = if ext_le(at(i, j), &hs) { at(i, j) } else { &hs };
            (0..dim).all(|k| ext_le(floor, &ext_add(at(i, k), at(k, j))))
        });

    let tightly_closed = if N::MODE == NumericMode::CheckedInt {
        strongly_closed && (0..dim).all(|i| m[(i, bar(i))].is_even())
    } else {
        log::debug!("tight closure is only defined for integer DBMs; reporting false");
        false
    };

    DbmProperties { coherent, consistent, closed, strongly_closed, weakly_closed, tightly_closed }
}
