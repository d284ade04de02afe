//! Small hand-checked octagons shared by unit tests, integration tests and
//! the CLI documentation.

use num::rational::BigRational;

use crate::bounds::Scalar;
use crate::dbm::{Dbm, DiffConstraint, OctConstraint, Sign};

fn n<N: Scalar>(v: i64) -> N {
    N::from_i64(v)
}

/// `x0 ≤ 3, x1 ≤ 2, x0 + x1 ≤ 6, -x0 - x1 ≤ 5, -x0 ≤ 3` over two variables.
pub fn sample_system<N: Scalar>() -> Vec<OctConstraint<N>> {
    vec![
        OctConstraint::unary(Sign::Plus, 0, n(3)),
        OctConstraint::unary(Sign::Plus, 1, n(2)),
        OctConstraint::binary(Sign::Plus, 0, Sign::Plus, 1, n(6)),
        OctConstraint::binary(Sign::Minus, 0, Sign::Minus, 1, n(5)),
        OctConstraint::unary(Sign::Minus, 0, n(3)),
    ]
}

/// The same system in the text format read by the CLI.
pub const SAMPLE_SYSTEM_TEXT: &str = "\
vars 2
x0 <= 3
x1 <= 2
x0 + x1 <= 6
-x0 - x1 <= 5
-x0 <= 3
";

/// Direct encoding of [`sample_system`], before any closure.
pub fn sample_dbm<N: Scalar>() -> Dbm<N> {
    Dbm::from_ints(&[
        &[None, Some(6), None, Some(6)],
        &[Some(6), None, Some(5), None],
        &[None, Some(6), None, Some(4)],
        &[Some(5), None, None, None],
    ])
    .expect("well-formed")
}

/// All-pairs shortest paths of [`sample_dbm`]; the diagonal still holds the
/// shortest cycle weights.
pub fn sample_shortest_paths<N: Scalar>() -> Dbm<N> {
    Dbm::from_ints(&[
        &[Some(11), Some(6), Some(11), Some(6)],
        &[Some(6), Some(11), Some(5), Some(9)],
        &[Some(9), Some(6), Some(11), Some(4)],
        &[Some(5), Some(11), Some(16), Some(11)],
    ])
    .expect("well-formed")
}

/// Closure of [`sample_dbm`] (zero diagonal).
pub fn sample_closed<N: Scalar>() -> Dbm<N> {
    Dbm::from_ints(&[
        &[Some(0), Some(6), Some(11), Some(6)],
        &[Some(6), Some(0), Some(5), Some(9)],
        &[Some(9), Some(6), Some(0), Some(4)],
        &[Some(5), Some(11), Some(16), Some(0)],
    ])
    .expect("well-formed")
}

/// Strong closure of [`sample_dbm`]. Combining the unary bounds `x1 ≤ 2`
/// and `-x0 ≤ 3` drops `(2,0)` and `(1,3)` from 9 to 5, and `(0,3)`,
/// `(2,1)` from 6 to 5.
pub fn sample_strongly_closed<N: Scalar>() -> Dbm<N> {
    Dbm::from_ints(&[
        &[Some(0), Some(6), Some(11), Some(5)],
        &[Some(6), Some(0), Some(5), Some(5)],
        &[Some(5), Some(5), Some(0), Some(4)],
        &[Some(5), Some(11), Some(16), Some(0)],
    ])
    .expect("well-formed")
}

/// Closed DBM of `x0 ≤ 7, x1 ≤ 0, x0 - x1 ≤ 7, x0 + x1 ≤ 7`.
pub fn propagation_base<N: Scalar>() -> Dbm<N> {
    Dbm::from_ints(&[
        &[Some(0), Some(14), Some(7), Some(7)],
        &[None, Some(0), None, None],
        &[None, Some(7), Some(0), Some(0)],
        &[None, Some(7), None, Some(0)],
    ])
    .expect("well-formed")
}

pub const PROPAGATION_BASE_TEXT: &str = "\
vars 2
x0 <= 7
x1 <= 0
x0 - x1 <= 7
x0 + x1 <= 7
";

/// `x0 - x1 ≤ 0`, i.e. `x'_0 - x'_2 ≤ 0`.
pub fn propagation_constraint<N: Scalar>() -> DiffConstraint<N> {
    DiffConstraint::new(0, 2, N::zero())
}

/// [`propagation_base`] after adding [`propagation_constraint`]: the new
/// constraint forces `x0 ≤ 0`, so `(0,1)` drops from 14 to 0.
pub fn propagation_result<N: Scalar>() -> Dbm<N> {
    Dbm::from_ints(&[
        &[Some(0), Some(0), Some(0), Some(0)],
        &[None, Some(0), None, None],
        &[None, Some(0), Some(0), Some(0)],
        &[None, Some(0), None, Some(0)],
    ])
    .expect("well-formed")
}

/// Integer coordinates as exact rationals.
pub fn point(coords: &[i64]) -> Vec<BigRational> {
    coords.iter().map(|&c| BigRational::from_integer(c.into())).collect()
}
