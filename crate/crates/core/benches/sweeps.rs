use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dgstab::kronecker::counterexample_report;
use dgstab::star::StarParams;
use dgstab::verify::{composition_sweep, hom_sweep};
use dgstab::{Execution, PrimeField};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn hom(c: &mut Criterion) {
    let field = PrimeField::default();
    let mut g = c.benchmark_group("hom_sweep");
    g.sample_size(10);
    for (n, d) in [(3, 2), (4, 2)] {
        let p = StarParams::new(n, d).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, format!("n{n}d{d}")), &p, |b, &p| {
                b.iter(|| hom_sweep(field, p, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn composition(c: &mut Criterion) {
    let field = PrimeField::default();
    let p = StarParams::new(4, 2).unwrap();
    let mut g = c.benchmark_group("composition_sweep");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| composition_sweep(field, p, exec).unwrap()));
    }
    g.finish();
}

fn counterexample(c: &mut Criterion) {
    let field = PrimeField::default();
    let mut g = c.benchmark_group("counterexample");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| counterexample_report(field, exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, hom, composition, counterexample);
criterion_main!(benches);
