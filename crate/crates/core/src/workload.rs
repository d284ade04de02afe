//! Random micro-benchmark problems: a system whose octagon contains the
//! origin, plus one extra constraint that may cut it away.
//!
//! Generation is a pure function of `(seed, trial)`: the generator is
//! ChaCha8 seeded with `seed`, on stream `trial`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{NumericMode, Scalar};
use crate::dbm::{OctConstraint, Sign};
use crate::incremental::IncrAlgorithm;

/// Matrix storage used by the benchmark driver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Dense,
    Compact,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Dense => "dense",
            Backend::Compact => "codbm",
        })
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dense" => Ok(Backend::Dense),
            "codbm" => Ok(Backend::Compact),
            _ => Err(format!("unknown backend `{s}` (expected dense or codbm)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub vars: usize,
    pub constraints: usize,
    pub trials: u64,
    pub seed: u64,
    pub algorithms: Vec<IncrAlgorithm>,
    pub mode: NumericMode,
    pub backend: Backend,
    /// Bounds are drawn from `[0, magnitude]` (extra constraint:
    /// `[-magnitude, magnitude]`).
    pub magnitude: i64,
    /// Probability that a generated constraint is unary.
    pub unary_fraction: f64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            vars: 10,
            constraints: 20,
            trials: 10,
            seed: 0,
            algorithms: Vec::new(),
            mode: NumericMode::ExactRational,
            backend: Backend::Dense,
            magnitude: 100,
            unary_fraction: 0.5,
        }
    }
}

/// The generator for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn sign(rng: &mut impl Rng) -> Sign {
    if rng.random_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// One constraint of random shape over `vars` variables with bound drawn
/// uniformly from `lo..=hi`. With a single variable every constraint is
/// unary.
pub fn random_constraint<N: Scalar>(
    rng: &mut impl Rng,
    vars: usize,
    unary_fraction: f64,
    lo: i64,
    hi: i64,
) -> OctConstraint<N> {
    let i = rng.random_range(0..vars);
    let d = N::from_i64(rng.random_range(lo..=hi));
    if vars == 1 || rng.random_bool(unary_fraction) {
        return OctConstraint::unary(sign(rng), i, d);
    }
    let mut j = rng.random_range(0..vars - 1);
    if j >= i {
        j += 1;
    }
    OctConstraint::binary(sign(rng), i, sign(rng), j, d)
}

/// The system and the extra constraint for `trial`.
pub fn gen_random<N: Scalar>(cfg: &BenchConfig, trial: u64) -> (Vec<OctConstraint<N>>, OctConstraint<N>) {
    let mut rng = trial_rng(cfg.seed, trial);
    let d = cfg.magnitude;
    let system = (0..cfg.constraints)
        .map(|_| random_constraint(&mut rng, cfg.vars, cfg.unary_fraction, 0, d))
        .collect();
    let extra = random_constraint(&mut rng, cfg.vars, cfg.unary_fraction, -d, d);
    (system, extra)
}
