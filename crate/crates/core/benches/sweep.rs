use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pgspec_core::fixtures;
use pgspec_core::graph::{validate_graph, Edge, FundamentalGraph};
use pgspec_core::{band_sweep, Execution, Potential, SweepOptions};

/// Ring of `n` vertices closed through the first lattice direction, with
/// extra rungs in the second: a larger matrix per grid point.
fn ladder(n: usize) -> FundamentalGraph {
    let mut edges = Vec::new();
    for j in 0..n {
        let wrap = if j + 1 == n { 1 } else { 0 };
        edges.push(Edge { from: j, to: (j + 1) % n, index: vec![wrap, 0] });
        edges.push(Edge { from: j, to: j, index: vec![0, 1] });
    }
    let g = FundamentalGraph::new(2, (0..n).map(|j| format!("r{j}")).collect(), edges).unwrap();
    validate_graph(&g).unwrap();
    g
}

fn bench(c: &mut Criterion) {
    let example = fixtures::five_vertex_example();
    let big = ladder(24);
    let cases = [("five-vertex/N=64", &example.graph, 64), ("ladder24/N=128", &big, 128)];
    let mut group = c.benchmark_group("band_sweep");
    group.sample_size(10);
    for (label, g, grid) in cases {
        let q = Potential::zeros(g.vertex_count());
        for (mode, execution) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            let opts = SweepOptions { grid, execution, ..Default::default() };
            group.bench_with_input(BenchmarkId::new(mode, label), &opts, |b, opts| {
                b.iter(|| band_sweep(g, &q, opts).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
