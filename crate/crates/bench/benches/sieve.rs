use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use dzlab_core::{build_table, summatory, CoeffKind, NumberField};

fn bench_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("sieve_build");
    for x in [100_000u64, 1_000_000] {
        group.throughput(Throughput::Elements(x));
        for (name, field) in [
            ("rat", NumberField::rational()),
            ("gauss", NumberField::quadratic(-1).unwrap()),
            ("cubic", NumberField::monogenic(&[1, 0, 0, -2]).unwrap()),
        ] {
            group.bench_with_input(BenchmarkId::new(name, x), &x, |b, &x| {
                b.iter(|| build_table(&field, x, CoeffKind::TotientSum).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_summatory(c: &mut Criterion) {
    let field = NumberField::quadratic(-1).unwrap();
    let table = build_table(&field, 1_000_000, CoeffKind::TotientSum).unwrap();
    c.bench_function("summatory_1e6", |b| {
        b.iter(|| summatory(&table, 1_000_000).unwrap())
    });
}

criterion_group!(benches, bench_build, bench_summatory);
criterion_main!(benches);
