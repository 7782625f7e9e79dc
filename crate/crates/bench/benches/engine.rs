use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use kahn_bench::{cubes, dense_config, random_graphs};
use kahn_core::algebra::Precision;
use kahn_core::search::{RootRule, Shard, SliceSpec};
use kahn_core::{check_kahn_bound, count_independent_sets, is_good, verify_statement2, SearchOptions};

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("count");
    for copies in [1, 4, 8] {
        let g = cubes(copies);
        group.bench_with_input(BenchmarkId::new("cubes", copies), &g, |b, g| {
            b.iter(|| count_independent_sets(black_box(g)).unwrap())
        });
    }
    let random = random_graphs(7, 8, 40);
    group.bench_function("random n=40", |b| {
        b.iter(|| {
            for g in &random {
                black_box(count_independent_sets(g).unwrap());
            }
        })
    });
    group.finish();
}

fn certification(c: &mut Criterion) {
    let p = Precision::default();
    let g = cubes(2);
    c.bench_function("kahn bound on two cubes", |b| {
        b.iter(|| check_kahn_bound(black_box(&g), p).unwrap())
    });
    c.bench_function("goodness on a cube vertex", |b| {
        b.iter(|| is_good(black_box(&g), 0, p).unwrap())
    });
    let cfg = dense_config();
    c.bench_function("configuration goodness", |b| b.iter(|| black_box(&cfg).goodness(p)));
}

fn search(c: &mut Criterion) {
    let spec = SliceSpec {
        d0: 3,
        delta_eff: 5,
        rule: RootRule::MinDegreeRoot,
    };
    let shard = Shard {
        spec,
        l1_degrees: vec![5, 4, 3],
    };
    c.bench_function("shard walk d0=3 [5,4,3]", |b| {
        b.iter(|| {
            let mut n = 0u64;
            shard.walk(&mut |_| n += 1);
            n
        })
    });
    let opts = SearchOptions {
        precision: Precision::default(),
    };
    let mut group = c.benchmark_group("statement 2");
    group.sample_size(10);
    group.bench_function("delta 3", |b| b.iter(|| verify_statement2(3, opts).unwrap()));
    group.finish();
}

criterion_group!(benches, counting, certification, search);
criterion_main!(benches);
