//! Extended numbers used as DBM entries.
//!
//! A [`Bound`] is either a finite value of some [`Scalar`] type or `+∞`.
//! Three scalar types are provided, one per [`NumericMode`]:
//!
//! | mode            | type            | arithmetic                       |
//! |-----------------|-----------------|----------------------------------|
//! | `ExactRational` | [`BigRational`] | exact, arbitrary precision       |
//! | `CheckedInt`    | `i64`           | overflow is an error             |
//! | `BinaryFloat64` | [`F64`]         | IEEE double, round-to-nearest    |
//!
//! Negative infinity is never represented: DBM entries are upper bounds.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, Signed, ToPrimitive, Zero};

use crate::error::OctError;

/// Number system a DBM computes in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NumericMode {
    ExactRational,
    CheckedInt,
    BinaryFloat64,
}

impl NumericMode {
    /// Short name used on the command line.
    pub fn short_name(self) -> &'static str {
        match self {
            NumericMode::ExactRational => "rat",
            NumericMode::CheckedInt => "int",
            NumericMode::BinaryFloat64 => "f64",
        }
    }
}

impl fmt::Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for NumericMode {
    type Err = OctError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rat" | "rational" => Ok(NumericMode::ExactRational),
            "int" | "integer" => Ok(NumericMode::CheckedInt),
            "f64" | "float" => Ok(NumericMode::BinaryFloat64),
            other => Err(OctError::InvalidLiteral(format!("unknown numeric mode `{other}`"))),
        }
    }
}

/// A finite number in one of the supported numeric modes.
///
/// Implementations must never produce NaN or infinities; `+∞` lives in
/// [`Bound::PosInf`].
pub trait Scalar: Clone + Ord + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const MODE: NumericMode;

    fn zero() -> Self;

    fn from_i64(v: i64) -> Self;

    /// `None` when the sum is not representable (integer overflow, float
    /// overflow to infinity).
    fn checked_add(&self, rhs: &Self) -> Option<Self>;

    /// Exact division by two. `None` when the result is not representable,
    /// i.e. an odd machine integer.
    fn checked_halve(&self) -> Option<Self>;

    /// `2⌊v/2⌋`.
    fn floor_even(&self) -> Self;

    /// Exact rational value of this number.
    fn to_rational(&self) -> BigRational;

    /// Parses a literal of the form `-12`, `7/2` or `3.5`.
    fn parse_literal(s: &str) -> Result<Self, OctError>;

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
}

/// Parses the shared literal grammar into an exact rational.
///
/// Accepted forms: `[-]digits`, `[-]digits/digits`, `[-]digits.digits`.
pub fn parse_exact_literal(s: &str) -> Result<BigRational, OctError> {
    let bad = || OctError::InvalidLiteral(s.to_string());
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let digits = |p: &str| !p.is_empty() && p.bytes().all(|c| c.is_ascii_digit());
    let value = if let Some((num, den)) = body.split_once('/') {
        if !digits(num) || !digits(den) {
            return Err(bad());
        }
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        BigRational::new(num.parse().map_err(|_| bad())?, den)
    } else if let Some((int, frac)) = body.split_once('.') {
        if !digits(int) || !digits(frac) {
            return Err(bad());
        }
        let scale = num::pow(BigInt::from(10u8), frac.len());
        let whole: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        BigRational::new(whole, scale)
    } else {
        if !digits(body) {
            return Err(bad());
        }
        BigRational::from_integer(body.parse().map_err(|_| bad())?)
    };
    Ok(if neg { -value } else { value })
}

impl Scalar for BigRational {
    const MODE: NumericMode = NumericMode::ExactRational;

    fn zero() -> Self {
        Zero::zero()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }

    fn checked_halve(&self) -> Option<Self> {
        Some(self / BigInt::from(2))
    }

    fn floor_even(&self) -> Self {
        let two = BigInt::from(2);
        (self / &two).floor() * two
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn parse_literal(s: &str) -> Result<Self, OctError> {
        parse_exact_literal(s)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Scalar for i64 {
    const MODE: NumericMode = NumericMode::CheckedInt;

    fn zero() -> Self {
        0
    }

    fn from_i64(v: i64) -> Self {
        v
    }

    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        i64::checked_add(*self, *rhs)
    }

    fn checked_halve(&self) -> Option<Self> {
        self.is_even().then_some(self / 2)
    }

    fn floor_even(&self) -> Self {
        self - self.rem_euclid(2)
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }

    fn parse_literal(s: &str) -> Result<Self, OctError> {
        let q = parse_exact_literal(s)?;
        if !q.is_integer() {
            return Err(OctError::InvalidLiteral(format!("{s} is not an integer")));
        }
        q.to_integer()
            .to_i64()
            .ok_or_else(|| OctError::InvalidLiteral(format!("{s} does not fit in 64 bits")))
    }
}

/// An IEEE double that is always finite and never negative zero, so the
/// total order agrees with numeric order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F64(f64);

impl F64 {
    /// Returns `None` for NaN and infinities.
    pub fn new(v: f64) -> Option<Self> {
        v.is_finite().then_some(F64(if v == 0.0 { 0.0 } else { v }))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl Eq for F64 {}

impl PartialOrd for F64 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for F64 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Display for F64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Scalar for F64 {
    const MODE: NumericMode = NumericMode::BinaryFloat64;

    fn zero() -> Self {
        F64(0.0)
    }

    fn from_i64(v: i64) -> Self {
        F64(v as f64)
    }

    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        F64::new(self.0 + rhs.0)
    }

    fn checked_halve(&self) -> Option<Self> {
        F64::new(self.0 / 2.0)
    }

    fn floor_even(&self) -> Self {
        F64::new(2.0 * (self.0 / 2.0).floor()).expect("finite input")
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_float(self.0).expect("F64 is always finite")
    }

    fn parse_literal(s: &str) -> Result<Self, OctError> {
        // Validate against the shared grammar first so `nan`, `1e3` etc. are
        // rejected.
        let exact = parse_exact_literal(s)?;
        let t = s.trim();
        let v = if t.contains('/') {
            exact.to_f64().unwrap_or(f64::NAN)
        } else {
            t.parse::<f64>().unwrap_or(f64::NAN)
        };
        F64::new(v).ok_or_else(|| OctError::InvalidLiteral(format!("{s} is not a finite double")))
    }
}

/// An upper bound: a finite value or `+∞`.
///
/// The derived order places every `Finite` below `PosInf`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound<N> {
    Finite(N),
    PosInf,
}

impl<N: Scalar> Bound<N> {
    pub fn zero() -> Self {
        Bound::Finite(N::zero())
    }

    pub fn int(v: i64) -> Self {
        Bound::Finite(N::from_i64(v))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Bound::PosInf)
    }

    pub fn finite(&self) -> Option<&N> {
        match self {
            Bound::Finite(v) => Some(v),
            Bound::PosInf => None,
        }
    }

    /// Strictly below zero. `+∞` is never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Bound::Finite(v) if v.is_negative())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, OctError> {
        match (self, rhs) {
            (Bound::Finite(a), Bound::Finite(b)) => {
                a.checked_add(b).map(Bound::Finite).ok_or_else(|| OctError::Overflow {
                    lhs: a.to_string(),
                    rhs: b.to_string(),
                })
            }
            _ => Ok(Bound::PosInf),
        }
    }

    /// Exact division by two.
    pub fn halve(&self) -> Result<Self, OctError> {
        match self {
            Bound::Finite(v) => v
                .checked_halve()
                .map(Bound::Finite)
                .ok_or_else(|| OctError::OddIntegerHalving { value: v.to_string() }),
            Bound::PosInf => Ok(Bound::PosInf),
        }
    }

    /// Rounds down to the nearest even value; `+∞` is left alone.
    pub fn tighten_even(&self) -> Self {
        match self {
            Bound::Finite(v) => Bound::Finite(v.floor_even()),
            Bound::PosInf => Bound::PosInf,
        }
    }

    /// Evenness in the integer sense. `+∞` counts as even; non-integral
    /// values never are.
    pub fn is_even(&self) -> bool {
        match self {
            Bound::Finite(v) => {
                let q = v.to_rational();
                q.is_integer() && q.to_integer().is_even()
            }
            Bound::PosInf => true,
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.finite().map(Scalar::to_rational)
    }

    /// Parses a literal, accepting `inf` for `+∞`.
    pub fn parse(s: &str) -> Result<Self, OctError> {
        match s.trim() {
            "inf" | "+inf" => Ok(Bound::PosInf),
            t => N::parse_literal(t).map(Bound::Finite),
        }
    }
}

impl<N: Scalar> fmt::Display for Bound<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => fmt::Display::fmt(v, f),
            Bound::PosInf => f.write_str("inf"),
        }
    }
}

/// Sum of a non-empty sequence of bounds; `+∞` absorbs.
///
/// # Panics
///
/// If `terms` is empty.
pub fn path_sum<'a, N: Scalar>(
    terms: impl IntoIterator<Item = &'a Bound<N>>,
) -> Result<Bound<N>, OctError> {
    let mut it = terms.into_iter();
    let first = it.next().expect("path_sum needs at least one term").clone();
    it.try_fold(first, |acc, t| acc.add(t))
}

/// Counts binary `min` applications. A k-ary min contributes `k - 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MinCounter {
    pub count: u64,
}

impl MinCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Least operand; adds `len - 1` to the count.
    ///
    /// # Panics
    ///
    /// If `operands` is empty.
    pub fn min_of<N: Ord>(&mut self, operands: impl IntoIterator<Item = N>) -> N {
        let mut it = operands.into_iter();
        let mut best = it.next().expect("min of an empty operand list");
        for x in it {
            self.count += 1;
            if x < best {
                best = x;
            }
        }
        best
    }

    /// Binary min, counted once.
    #[inline]
    pub fn min2<N: Ord>(&mut self, a: N, b: N) -> N {
        self.count += 1;
        if b < a {
            b
        } else {
            a
        }
    }
}
