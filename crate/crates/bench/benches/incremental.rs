use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use octagon_bench::{closed_case, Q, SIZES};
use octagon_core::{
    incr_in_situ, incr_strong_in_situ, incremental, CoDbm, Dbm, DbmStorage, IncrAlgorithm, MinCounter, Scalar,
    TraversalOrder,
};

fn family<N: Scalar, S: DbmStorage<N>>(c: &mut Criterion, group: &str, algorithms: &[IncrAlgorithm]) {
    let mut g = c.benchmark_group(group);
    for &n in SIZES {
        let (base, o) = closed_case::<N, S>(n);
        for &alg in algorithms {
            g.bench_with_input(BenchmarkId::new(alg.name(), n), &n, |b, _| {
                b.iter(|| incremental::run(alg, &base, &o, &mut MinCounter::new()).unwrap())
            });
        }
    }
    g.finish();
}

fn rational_dense(c: &mut Criterion) {
    use IncrAlgorithm::*;
    family::<Q, Dbm<Q>>(c, "incr/rat/dense", &[Mine, Closure, Hoisted, Strong, StrongReduce]);
}

fn rational_compact(c: &mut Criterion) {
    use IncrAlgorithm::*;
    family::<Q, CoDbm<Q>>(c, "incr/rat/codbm", &[Closure, Hoisted, Strong]);
}

fn integer_dense(c: &mut Criterion) {
    use IncrAlgorithm::*;
    family::<i64, Dbm<i64>>(c, "incr/int/dense", &[Mine, Closure, Hoisted, Tight]);
}

fn in_situ(c: &mut Criterion) {
    let mut g = c.benchmark_group("incr/in-situ");
    for &n in SIZES {
        let (base, o) = closed_case::<Q, Dbm<Q>>(n);
        let order = TraversalOrder::row_major(n);
        let keyed = order.clone().keys_first();
        g.bench_with_input(BenchmarkId::new("incr", n), &n, |b, _| {
            b.iter_batched_ref(
                || base.clone(),
                |m| incr_in_situ(m, &o, &order, &mut MinCounter::new()).unwrap(),
                BatchSize::SmallInput,
            )
        });
        g.bench_with_input(BenchmarkId::new("strong", n), &n, |b, _| {
            b.iter_batched_ref(
                || base.clone(),
                |m| incr_strong_in_situ(m, &o, &keyed, &mut MinCounter::new()).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
    g.finish();
}

criterion_group!(benches, rational_dense, rational_compact, integer_dense, in_situ);
criterion_main!(benches);
