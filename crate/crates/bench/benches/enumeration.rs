use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use interp_bench::open_grid;
use interp_core::{AgentModel, Enumerator};

fn enumeration(c: &mut Criterion) {
    let e = Enumerator::default();
    let mut g = c.benchmark_group("enumerate");
    for (w, h) in [(3, 3), (4, 3), (4, 4)] {
        let s = open_grid(w, h);
        let m = AgentModel::new("a", 'A', 1.0).unwrap();
        g.bench_with_input(BenchmarkId::new("goal", format!("{w}x{h}")), &s, |b, s| {
            b.iter(|| e.goal_traces(black_box(s), &m).unwrap().len())
        });
        g.bench_with_input(BenchmarkId::new("maximal", format!("{w}x{h}")), &s, |b, s| {
            b.iter(|| e.maximal_traces(black_box(s)).unwrap().len())
        });
        g.bench_with_input(BenchmarkId::new("count_feasible", format!("{w}x{h}")), &s, |b, s| {
            b.iter(|| e.count_feasible_traces(black_box(s)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration);
criterion_main!(benches);
