//! Cube construction and homology with rayon on and off.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use krh_core::algebra::Potential;
use krh_core::link::{build_complex, homology_of, parse_diagram};
use krh_core::par;

fn cube(c: &mut Criterion) {
    let cases = [("trefoil", "s1 s1 s1", 2), ("figure-eight", "s1 s2^-1 s1 s2^-1", 2), ("hopf", "s1 s1", 3)];
    let mut g = c.benchmark_group("cube");
    g.sample_size(10);
    for (name, braid, n) in cases {
        let d = parse_diagram(braid).unwrap();
        let p = Potential::gornik(n).unwrap();
        for parallel in [true, false] {
            let id = BenchmarkId::new(if parallel { "parallel" } else { "sequential" }, format!("{name} n={n}"));
            g.bench_function(id, |b| {
                par::set_parallel(parallel);
                b.iter(|| homology_of(&build_complex(black_box(&d), &p).unwrap()))
            });
        }
    }
    par::set_parallel(true);
    g.finish();
}

criterion_group!(benches, cube);
criterion_main!(benches);
