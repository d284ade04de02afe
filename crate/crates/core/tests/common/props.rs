//! Generative property checks, shared by the `properties` test target and
//! the acceptance runner. Each check drives its own deterministic proptest
//! runner for [`CASES`] cases.

use num::rational::BigRational as Q;
use num::Integer;
use octagon_core::{
    check_integer_consistent, close, incr, incr_hoisted, incr_mine, incr_strong, incr_strong_reduce, incr_tight,
    strengthen, strong_closure, tight_closure, tighten, Bound, Dbm, DbmStorage, MinCounter, OctConstraint, Scalar,
    Sign,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;

pub const CASES: u32 = 500;
const MAX_VARS: usize = 5;
const MAGNITUDE: i64 = 12;

fn runner() -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    TestRunner::new_with_rng(config, rng)
}

fn constraint<N: Scalar>(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = OctConstraint<N>> {
    (0..n, 0..n, any::<bool>(), any::<bool>(), any::<bool>(), lo..=hi).prop_map(|(i, j, si, sj, unary, d)| {
        let sign = |b: bool| if b { Sign::Plus } else { Sign::Minus };
        if unary || i == j {
            OctConstraint::unary(sign(si), i, N::from_i64(d))
        } else {
            OctConstraint::binary(sign(si), i, sign(sj), j, N::from_i64(d))
        }
    })
}

/// A satisfiable system (origin inside), an extra constraint that may cut
/// everything away, and a second constraint used to build a smaller DBM.
fn case<N: Scalar>() -> impl Strategy<Value = (Case<N>, OctConstraint<N>)> {
    (1..=MAX_VARS).prop_flat_map(|n| {
        (
            prop::collection::vec(constraint::<N>(n, 0, MAGNITUDE), 0..=3 * n),
            constraint::<N>(n, -MAGNITUDE, MAGNITUDE),
            constraint::<N>(n, -MAGNITUDE, MAGNITUDE),
        )
            .prop_map(move |(system, extra, other)| (Case { n, system, extra }, other))
    })
}

fn closed<N: Scalar>(m: &Dbm<N>) -> Option<Dbm<N>> {
    close(m, &mut MinCounter::new()).unwrap().closed()
}

fn mins() -> MinCounter {
    MinCounter::new()
}

type Check = Result<(), TestCaseError>;

/// `(closed m1, closed m2)` with `m1 ≤ m2`: `m1` adds one more constraint.
fn nested<N: Scalar>(c: &Case<N>, other: &OctConstraint<N>) -> Option<(Dbm<N>, Dbm<N>)> {
    let m2 = closed(&c.base())?;
    let mut more = c.base();
    more.add_constraint(other).unwrap();
    let m1 = closed(&more)?;
    Some((m1, m2))
}

pub fn strengthen_idempotent_reductive_coherent() -> Result<(), String> {
    runner()
        .run(&case::<Q>(), |(c, _)| -> Check {
            let m = closed(&c.base()).unwrap();
            let s = strengthen(&m, &mut mins()).unwrap();
            prop_assert_eq!(&strengthen(&s, &mut mins()).unwrap(), &s);
            prop_assert!(s.le_pointwise(&m).unwrap());
            prop_assert!(s.classify().coherent);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn tighten_idempotent_reductive_coherent() -> Result<(), String> {
    runner()
        .run(&case::<i64>(), |(c, _)| -> Check {
            let m = closed(&c.base()).unwrap();
            let t = tighten(&m);
            prop_assert_eq!(&tighten(&t), &t);
            prop_assert!(t.le_pointwise(&m).unwrap());
            prop_assert!(t.classify().coherent);
            for i in 0..t.dim() {
                prop_assert!(t.get(i, i ^ 1).is_even());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn strengthen_tighten_monotone() -> Result<(), String> {
    runner()
        .run(&case::<i64>(), |(c, other)| -> Check {
            let Some((m1, m2)) = nested(&c, &other) else { return Ok(()) };
            prop_assert!(m1.le_pointwise(&m2).unwrap());
            let (t1, t2) = (tighten(&m1), tighten(&m2));
            prop_assert!(t1.le_pointwise(&t2).unwrap());
            let s1 = strengthen(&t1, &mut mins()).unwrap();
            let s2 = strengthen(&t2, &mut mins()).unwrap();
            prop_assert!(s1.le_pointwise(&s2).unwrap());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    runner()
        .run(&case::<Q>(), |(c, other)| -> Check {
            let Some((m1, m2)) = nested(&c, &other) else { return Ok(()) };
            let s1 = strengthen(&m1, &mut mins()).unwrap();
            let s2 = strengthen(&m2, &mut mins()).unwrap();
            prop_assert!(s1.le_pointwise(&s2).unwrap());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn incr_idempotent() -> Result<(), String> {
    runner()
        .run(&case::<Q>(), |(c, _)| -> Check {
            let m = closed(&c.base()).unwrap();
            let o = c.diff();
            if let Some(once) = incr(&m, &o, &mut mins()).unwrap().closed() {
                let twice = incr(&once, &o, &mut mins()).unwrap().closed();
                prop_assert_eq!(twice.as_ref(), Some(&once));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn incr_monotone() -> Result<(), String> {
    runner()
        .run(&case::<Q>(), |(c, other)| -> Check {
            let Some((m1, m2)) = nested(&c, &other) else { return Ok(()) };
            let o = c.diff();
            let r1 = incr(&m1, &o, &mut mins()).unwrap();
            let r2 = incr(&m2, &o, &mut mins()).unwrap();
            if let (Some(a), Some(b)) = (r1.as_closed(), r2.as_closed()) {
                prop_assert!(a.le_pointwise(b).unwrap());
            }
            // A smaller input can only be less consistent.
            prop_assert!(!r2.is_unsat() || r1.is_unsat());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn incr_family_coherent() -> Result<(), String> {
    runner()
        .run(&case::<Q>(), |(c, _)| -> Check {
            let m = strong_closure(&c.base(), &mut mins()).unwrap().closed().unwrap();
            let o = c.diff();
            for f in [incr_mine, incr, incr_hoisted, incr_strong, incr_strong_reduce] {
                if let Some(r) = f(&m, &o, &mut mins()).unwrap().closed() {
                    prop_assert!(r.classify().coherent);
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    runner()
        .run(&case::<i64>(), |(c, _)| -> Check {
            let m = tight_closure(&c.base(), &mut mins()).unwrap().closed().unwrap();
            if let Some(r) = incr_tight(&m, &c.diff(), &mut mins()).unwrap().closed() {
                prop_assert!(r.classify().coherent);
                prop_assert!(r.classify().tightly_closed);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn key_entries_are_strengthening_fixpoints() -> Result<(), String> {
    runner()
        .run(&case::<Q>(), |(c, _)| -> Check {
            let m = closed(&c.base()).unwrap();
            let o = c.diff();
            let Some(plain) = incr(&m, &o, &mut mins()).unwrap().closed() else { return Ok(()) };
            let s = strengthen(&plain, &mut mins()).unwrap();
            let strong = incr_strong(&m, &o, &mut mins()).unwrap().closed().unwrap();
            for i in 0..m.dim() {
                prop_assert_eq!(s.get(i, i ^ 1), plain.get(i, i ^ 1));
                prop_assert_eq!(strong.get(i, i ^ 1), plain.get(i, i ^ 1));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn floor_half(b: &Bound<i64>) -> Bound<i64> {
    match b {
        Bound::Finite(v) => Bound::Finite(v.div_floor(&2)),
        Bound::PosInf => Bound::PosInf,
    }
}

pub fn tight_direct_formula() -> Result<(), String> {
    runner()
        .run(&case::<i64>(), |(c, other)| -> Check {
            let mut m = c.base();
            m.add_constraint(&other).unwrap();
            let Some(m) = closed(&m) else { return Ok(()) };
            let t = tighten(&m);
            let s = strengthen(&t, &mut mins()).unwrap();
            for i in 0..m.dim() {
                for j in 0..m.dim() {
                    let direct = m.get(i, j).clone().min(floor_half(m.get(i, i ^ 1)).add(&floor_half(m.get(j ^ 1, j))).unwrap());
                    prop_assert_eq!(s.get(i, j), &direct, "entry ({}, {})", i, j);
                }
            }
            let consistent = !check_integer_consistent(t).unwrap().is_unsat();
            prop_assert!(!consistent || s.classify().closed);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn strong_closure_canonical_under_entailed_constraints() -> Result<(), String> {
    runner()
        .run(&(case::<Q>(), any::<u64>()), |((c, _), pick)| -> Check {
            let base = c.base();
            let strong = strong_closure(&base, &mut mins()).unwrap().closed().unwrap();
            let finite: Vec<_> = (0..strong.dim())
                .flat_map(|i| (0..strong.dim()).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && !strong.get(i, j).is_inf())
                .collect();
            if finite.is_empty() {
                return Ok(());
            }
            let (i, j) = finite[(pick % finite.len() as u64) as usize];
            let v = strong.get(i, j).to_rational().unwrap();
            let mut system = c.system.clone();
            system.push(entry_as_constraint(i, j, &v));
            let again = Dbm::from_constraints(c.n, &system).unwrap();
            let again = strong_closure(&again, &mut mins()).unwrap().closed().unwrap();
            prop_assert_eq!(again, strong);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub const POINTS_PER_CASE: usize = 100;

pub fn strong_closure_preserves_concretization() -> Result<(), String> {
    runner()
        .run(&(case::<Q>(), any::<u64>()), |((c, other), seed)| -> Check {
            let mut base = c.base();
            base.add_constraint(&other).unwrap();
            let strong = strong_closure(&base, &mut mins()).unwrap();
            let reference = to_ref(&base);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for k in 0..POINTS_PER_CASE {
                let r = if k % 2 == 0 { 2 } else { MAGNITUDE + 2 };
                let p = random_point(&mut rng, c.n, r);
                let inside = base.gamma_contains(&p);
                prop_assert_eq!(inside, ref_contains(&reference, &p));
                match strong.as_closed() {
                    Some(s) => prop_assert_eq!(s.gamma_contains(&p), inside),
                    None => prop_assert!(!inside),
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub type Property = (&'static str, fn() -> Result<(), String>);

pub const ALL: &[Property] = &[
    ("strengthen idempotent, reductive, coherent", strengthen_idempotent_reductive_coherent),
    ("tighten idempotent, reductive, coherent", tighten_idempotent_reductive_coherent),
    ("strengthen and tighten monotone", strengthen_tighten_monotone),
    ("incr idempotent", incr_idempotent),
    ("incr monotone", incr_monotone),
    ("incremental outputs coherent", incr_family_coherent),
    ("key entries fixed by strengthening", key_entries_are_strengthening_fixpoints),
    ("tight closure direct formula", tight_direct_formula),
    ("strong closure canonical", strong_closure_canonical_under_entailed_constraints),
    ("concretization preserved", strong_closure_preserves_concretization),
];
