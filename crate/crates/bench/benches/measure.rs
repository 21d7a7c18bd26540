use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dzlab_core::{build_table, m_q, CoeffKind, NumberField, TestFunction};

fn bench_m_q(c: &mut Criterion) {
    let field = NumberField::quadratic(-1).unwrap();
    let table = build_table(&field, 1_000_000, CoeffKind::TotientSum).unwrap();
    let f = TestFunction::indicator(1.0, 2.0).unwrap();
    let mut group = c.benchmark_group("m_q_indicator");
    for q in [1e-2f64, 1e-4, 4e-6] {
        group.bench_with_input(BenchmarkId::from_parameter(q), &q, |b, &q| {
            b.iter(|| m_q(&table, &f, q).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_m_q);
criterion_main!(benches);
