//! Benchmarks for the data-parallel hot paths.
//!
//! The parallel/sequential switch is the compile-time `parallel`
//! feature, so compare the two modes with criterion baselines:
//!
//! ```text
//! cargo bench -p knotkit -- --save-baseline rayon
//! cargo bench -p knotkit --no-default-features -- --baseline rayon
//! ```
//!
//! Benchmark names are identical under both builds.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use knotkit::corpus;
use knotkit::diagram::families;
use knotkit::khovanov::{self, FieldChoice};
use knotkit::{classical, turaev, Diagram, PretzelSpec};

fn ten_crossing_knot() -> Diagram {
    families::pretzel(PretzelSpec::new(2, 1).unwrap()).unwrap()
}

fn bracket_state_sum(c: &mut Criterion) {
    let d = families::torus_knot(2, 11).unwrap();
    c.bench_function("bracket/torus-2-11", |b| {
        b.iter(|| classical::kauffman_bracket(black_box(&d), 16).unwrap())
    });
}

fn khovanov_cube_ranks(c: &mut Criterion) {
    let d = ten_crossing_knot();
    c.bench_function("khovanov-ranks-gf2/pretzel-2-1", |b| {
        b.iter(|| khovanov::khovanov_ranks(black_box(&d), FieldChoice::GF2, 14).unwrap())
    });
}

fn s_invariant(c: &mut Criterion) {
    let d = ten_crossing_knot();
    let mut g = c.benchmark_group("s-invariant");
    g.sample_size(10);
    g.bench_function("pretzel-2-1", |b| {
        b.iter(|| khovanov::s_invariant(black_box(&d), 14).unwrap())
    });
    g.finish();
}

fn corpus_sweep(c: &mut Criterion) {
    let entries: Vec<Diagram> = corpus::bundled_rolfsen()
        .iter()
        .map(|e| e.diagram().unwrap())
        .collect();
    c.bench_function("corpus-sweep/det-signature-genus", |b| {
        b.iter(|| {
            knotkit::par::map_slice(black_box(&entries), |d| {
                (
                    classical::determinant(d).unwrap(),
                    classical::signature(d).unwrap(),
                    turaev::turaev_genus_diagram(d).unwrap(),
                )
            })
        })
    });
}

criterion_group!(
    benches,
    bracket_state_sum,
    khovanov_cube_ranks,
    s_invariant,
    corpus_sweep
);
criterion_main!(benches);
