use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hiercons::{
    coclassification, expected_mi, generate_ensemble, iterated_louvain, louvain_once, EventProfile, Partition,
    QualityProblem, Seed,
};
use hiercons_bench::network;
use std::hint::black_box;

fn louvain(c: &mut Criterion) {
    let mut group = c.benchmark_group("louvain");
    group.sample_size(10);
    for n in [200, 1000] {
        let (g, _) = network(n, 1);
        let problem = QualityProblem::modularity(&g, 1.0).unwrap();
        group.bench_with_input(BenchmarkId::new("once", n), &problem, |b, p| {
            b.iter(|| louvain_once(p, Seed::new(7), None).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("iterated", n), &problem, |b, p| {
            b.iter(|| iterated_louvain(p, Seed::new(7)).unwrap())
        });
    }
    group.finish();
}

fn coclass(c: &mut Criterion) {
    let (g, _) = network(1000, 2);
    let gammas: Vec<f64> = (0..50).map(|i| 0.2 + 0.05 * i as f64).collect();
    let e = generate_ensemble(&g, &gammas, Seed::new(3), 0).unwrap();
    let mut group = c.benchmark_group("coclassification");
    group.sample_size(10);
    group.bench_function("n1000_l50", |b| b.iter(|| coclassification(black_box(&e))));
    group.finish();
}

fn events(c: &mut Criterion) {
    let mut group = c.benchmark_group("event_profile");
    group.sample_size(10);
    for n in [200, 1000] {
        let (g, _) = network(n, 4);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| EventProfile::build(g).unwrap()));
    }
    group.finish();
}

fn emi(c: &mut Criterion) {
    let (_, planted) = network(1000, 5);
    let shuffled = Partition::from_labels(&(0..planted.n()).map(|i| (i * 7919) % 37).collect::<Vec<_>>());
    c.bench_function("expected_mi/n1000", |b| b.iter(|| expected_mi(black_box(&planted), black_box(&shuffled)).unwrap()));
}

criterion_group!(benches, louvain, coclass, events, emi);
criterion_main!(benches);
