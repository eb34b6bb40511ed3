use cooprepair::code::{locality_oracle, min_distance, LocalityOptions};
use cooprepair::constructions::{hadamard_code, rs_mds};
use cooprepair::graph::{edge_code, heawood};
use cooprepair::sim::{adversarial_sweep, random_sweep, repairer, StrategyKind, StrategyParams};
use cooprepair::{Field, Parallelism};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)];

fn bench_min_distance(c: &mut Criterion) {
    let code = rs_mds(16, 12, 5).unwrap();
    let mut g = c.benchmark_group("min_distance_rs16_12_5");
    g.sample_size(10);
    for (name, par) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &par, |b, &par| b.iter(|| min_distance(&code, par).unwrap()));
    }
    g.finish();
}

fn bench_locality(c: &mut Criterion) {
    let code = hadamard_code(4).unwrap();
    let mut g = c.benchmark_group("locality_hadamard4_l3");
    g.sample_size(10);
    for (name, par) in MODES {
        let opts = LocalityOptions { parallelism: par, ..LocalityOptions::default() };
        g.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, &opts| b.iter(|| locality_oracle(&code, 3, opts).unwrap()));
    }
    g.finish();
}

fn bench_sweeps(c: &mut Criterion) {
    let code = edge_code(&heawood(), &Field::gf2()).unwrap().code;
    let rep = repairer(&code, StrategyKind::Peeling, &StrategyParams::default()).unwrap();
    let mut g = c.benchmark_group("heawood_peeling");
    g.sample_size(10);
    for (name, par) in MODES {
        g.bench_with_input(BenchmarkId::new("adversarial_l5", name), &par, |b, &par| {
            b.iter(|| adversarial_sweep(rep.as_ref(), 5, u64::MAX, 0, par).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("random_l6_20000", name), &par, |b, &par| {
            b.iter(|| random_sweep(rep.as_ref(), 6, 20_000, 1, par).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_min_distance, bench_locality, bench_sweeps);
criterion_main!(benches);
