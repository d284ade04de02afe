//! Octagon abstract domain over difference-bound matrices: closure, strong
//! and tight closure, and quadratic incremental closure, over dense and
//! compact storage.

pub mod bounds;
pub mod closure;
pub mod codbm;
pub mod dbm;
pub mod error;
pub mod fixtures;
pub mod incremental;
pub mod system;
pub mod workload;

pub use bounds::{path_sum, Bound, MinCounter, NumericMode, Scalar, F64};
pub use closure::{
    check_consistent, check_integer_consistent, close, floyd_warshall, strengthen, strong_closure, tight_closure,
    tighten, ClosureOutcome, Outcome,
};
pub use codbm::{half_index, run_over, CacheHandle, CoDbm, Pipeline};
pub use dbm::{bar, dbm_equal, Dbm, DbmProperties, DbmStorage, DiffConstraint, OctConstraint, Sign};
pub use error::{OctError, Result};
pub use incremental::{
    add_octagonal, fast_unsat, incr, incr_hoisted, incr_in_situ, incr_mine, incr_strong, incr_strong_in_situ,
    incr_strong_reduce, incr_tight, incr_tight_in_situ, IncrAlgorithm, IncrStats, TraversalOrder,
};
pub use system::{dump_csv, parse_constraint, parse_csv, parse_system, System};
pub use workload::{gen_random, Backend, BenchConfig};
