//! Sequential search against the parallel root split.
//!
//! Run with `--no-default-features` to time the fallback path of
//! `solve_parallel` as well.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use relgame::playout::playout_batch;
use relgame::{build_group, solve, solve_parallel, Budget, CayleyGraph, Game, GameKind, GroupSpec};

fn graph(spec: &GroupSpec) -> CayleyGraph {
    let (g, s) = build_group(spec).expect("bench group builds");
    CayleyGraph::new(g, s)
}

fn solvers(c: &mut Criterion) {
    let budget = Budget::default().with_max_order(32);
    let cases = [
        (GroupSpec::GeneralizedDihedral(vec![3, 4]), GameKind::rav()),
        (GroupSpec::ProductCyclic(6, 4), GameKind::rav()),
        (GroupSpec::ProductCyclic(5, 5), GameKind::rav()),
        (GroupSpec::Dihedral(8), GameKind::rel_n(3).unwrap()),
    ];
    let mut group = c.benchmark_group("solve");
    group.sample_size(20);
    for (spec, kind) in &cases {
        let g = graph(spec);
        let label = format!("{spec}/{kind}");
        group.bench_with_input(BenchmarkId::new("sequential", &label), &g, |b, g| {
            b.iter(|| solve(black_box(g), *kind, budget).unwrap().winner)
        });
        group.bench_with_input(BenchmarkId::new("parallel", &label), &g, |b, g| {
            b.iter(|| solve_parallel(black_box(g), *kind, budget).unwrap().winner)
        });
    }
    group.finish();
}

fn playouts(c: &mut Criterion) {
    let g = graph(&GroupSpec::Dihedral(10));
    let game = Game::new(&g, GameKind::rel()).unwrap();
    c.bench_function("playout_batch/D_10/10k", |b| {
        b.iter(|| playout_batch(&game, 10_000, black_box(3), |_| {}).total_moves)
    });
}

criterion_group!(benches, solvers, playouts);
criterion_main!(benches);
