//! Test-side reference implementation and random case generation.
//!
//! The reference works on plain `Vec<Vec<Option<BigRational>>>` matrices
//! (`None` = +∞) and re-derives the constraint translation, so it shares no
//! code with the library.
#![allow(dead_code)]

pub mod props;

use num::rational::BigRational as Q;
use num::{Signed, Zero};
use octagon_core::workload::{random_constraint, trial_rng};
use octagon_core::{Bound, Dbm, DbmStorage, DiffConstraint, OctConstraint, Scalar, Sign};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type RefM = Vec<Vec<Option<Q>>>;

pub fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

fn add(a: &Option<Q>, b: &Option<Q>) -> Option<Q> {
    Some(a.as_ref()? + b.as_ref()?)
}

fn lt(a: &Option<Q>, b: &Option<Q>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x < y,
        (Some(_), None) => true,
        _ => false,
    }
}

fn tighter(cur: &mut Option<Q>, cand: Option<Q>) {
    if lt(&cand, cur) {
        *cur = cand;
    }
}

pub fn ref_top(n: usize) -> RefM {
    vec![vec![None; 2 * n]; 2 * n]
}

/// `x'_{2k} = x_k`, `x'_{2k+1} = -x_k`.
fn pos(sign: Sign, var: usize) -> usize {
    2 * var + usize::from(sign == Sign::Minus)
}

fn flip(s: Sign) -> Sign {
    match s {
        Sign::Plus => Sign::Minus,
        Sign::Minus => Sign::Plus,
    }
}

pub fn ref_add_constraint<N: Scalar>(m: &mut RefM, c: &OctConstraint<N>) {
    match c {
        OctConstraint::Unary { sign, i, d } => {
            let p = pos(*sign, *i);
            let d = d.to_rational() * q(2);
            tighter(&mut m[p][p ^ 1], Some(d));
        }
        OctConstraint::Binary { sign_i, i, sign_j, j, d } => {
            // s_i x_i - (-s_j x_j) ≤ d
            let p = pos(*sign_i, *i);
            let r = pos(flip(*sign_j), *j);
            let d = d.to_rational();
            tighter(&mut m[p][r], Some(d.clone()));
            tighter(&mut m[r ^ 1][p ^ 1], Some(d));
        }
    }
}

pub fn ref_from_constraints<N: Scalar>(n: usize, cs: &[OctConstraint<N>]) -> RefM {
    let mut m = ref_top(n);
    for c in cs {
        ref_add_constraint(&mut m, c);
    }
    m
}

/// Closure, or `None` when inconsistent.
pub fn ref_close(m: &RefM) -> Option<RefM> {
    let dim = m.len();
    let mut m = m.clone();
    for k in 0..dim {
        for i in 0..dim {
            for j in 0..dim {
                let via = add(&m[i][k], &m[k][j]);
                tighter(&mut m[i][j], via);
            }
        }
    }
    for i in 0..dim {
        if m[i][i].as_ref().is_some_and(|v| Signed::is_negative(v)) {
            return None;
        }
        m[i][i] = Some(<Q as Zero>::zero());
    }
    Some(m)
}

pub fn ref_strengthen(m: &RefM) -> RefM {
    let dim = m.len();
    let mut out = m.clone();
    for i in 0..dim {
        for j in 0..dim {
            let half = add(&m[i][i ^ 1], &m[j ^ 1][j]).map(|v| v / q(2));
            tighter(&mut out[i][j], half);
        }
    }
    out
}

pub fn floor_even(v: &Q) -> Q {
    (v / q(2)).floor() * q(2)
}

/// Tight closure over the integers, or `None` when there is no integer
/// solution.
pub fn ref_tight(m: &RefM) -> Option<RefM> {
    let mut c = ref_close(m)?;
    let dim = c.len();
    for i in 0..dim {
        c[i][i ^ 1] = c[i][i ^ 1].as_ref().map(floor_even);
    }
    for i in 0..dim {
        if add(&c[i][i ^ 1], &c[i ^ 1][i]).is_some_and(|v| Signed::is_negative(&v)) {
            return None;
        }
    }
    Some(ref_strengthen(&c))
}

pub fn ref_strong(m: &RefM) -> Option<RefM> {
    ref_close(m).map(|c| ref_strengthen(&c))
}

pub fn to_ref<N: Scalar, S: DbmStorage<N>>(m: &S) -> RefM {
    (0..m.dim()).map(|i| (0..m.dim()).map(|j| m.get(i, j).to_rational()).collect()).collect()
}

pub fn from_ref<N: Scalar>(m: &RefM) -> Dbm<N> {
    let rows = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| match v {
                    None => Bound::PosInf,
                    Some(v) => {
                        assert!(v.is_integer(), "non-integer {v} in integral fixture");
                        Bound::Finite(N::from_i64(i64::try_from(v.to_integer()).expect("fits")))
                    }
                })
                .collect()
        })
        .collect();
    Dbm::from_rows(rows).expect("square")
}

pub fn ref_add_diff<N: Scalar>(m: &RefM, o: &DiffConstraint<N>) -> RefM {
    let mut m = m.clone();
    let d = Some(o.d.to_rational());
    tighter(&mut m[o.a][o.b], d.clone());
    tighter(&mut m[o.b ^ 1][o.a ^ 1], d);
    m
}

pub fn ref_le(a: &RefM, b: &RefM) -> bool {
    a.iter().flatten().zip(b.iter().flatten()).all(|(x, y)| !lt(y, x))
}

/// A random satisfiable system over `n` variables (the origin satisfies
/// every constraint) plus one extra constraint with bound in `[-d, d]`.
#[derive(Clone, Debug)]
pub struct Case<N> {
    pub n: usize,
    pub system: Vec<OctConstraint<N>>,
    pub extra: OctConstraint<N>,
}

impl<N: Scalar> Case<N> {
    pub fn generate(rng: &mut ChaCha8Rng, n: usize, magnitude: i64) -> Self {
        let count = rng.random_range(0..=3 * n);
        let system = (0..count).map(|_| random_constraint(rng, n, 0.5, 0, magnitude)).collect();
        let extra = random_constraint(rng, n, 0.5, -magnitude, magnitude);
        Case { n, system, extra }
    }

    pub fn from_seed(seed: u64, n: usize, magnitude: i64) -> Self {
        Self::generate(&mut trial_rng(seed, n as u64), n, magnitude)
    }

    pub fn base(&self) -> Dbm<N> {
        Dbm::from_constraints(self.n, &self.system).expect("generated within range")
    }

    pub fn diff(&self) -> DiffConstraint<N> {
        self.extra.primary_diff().expect("small bounds")
    }

    pub fn augmented_ref(&self) -> RefM {
        let mut all = self.system.clone();
        all.push(self.extra.clone());
        ref_from_constraints(self.n, &all)
    }
}

/// A random rational point, coordinates in `[-r, r]` with denominators up to
/// 4.
pub fn random_point(rng: &mut impl Rng, n: usize, r: i64) -> Vec<Q> {
    (0..n)
        .map(|_| {
            let den = rng.random_range(1..=4i64);
            Q::new(rng.random_range(-r * den..=r * den).into(), den.into())
        })
        .collect()
}

/// Direct concretization test against the reference matrix.
pub fn ref_contains(m: &RefM, p: &[Q]) -> bool {
    let x = |k: usize| if k % 2 == 0 { p[k / 2].clone() } else { -p[k / 2].clone() };
    (0..m.len()).all(|i| {
        (0..m.len()).all(|j| match &m[i][j] {
            None => true,
            Some(v) => x(i) - x(j) <= *v,
        })
    })
}

/// The entry `(i, j)` read back as an octagonal constraint.
pub fn entry_as_constraint(i: usize, j: usize, v: &Q) -> OctConstraint<Q> {
    let sign = |k: usize| if k % 2 == 0 { Sign::Plus } else { Sign::Minus };
    if i / 2 == j / 2 {
        assert_ne!(i, j);
        OctConstraint::unary(sign(i), i / 2, v / q(2))
    } else {
        OctConstraint::binary(sign(i), i / 2, flip(sign(j)), j / 2, v.clone())
    }
}
