use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use drinfeld::brandt::operator_tables;
use drinfeld::supersingular::{enumerate_ss, leveled_ss_set};
use drinfeld::{par, PolyA, PrimeP};

fn workloads(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration");
    group.sample_size(10);
    let t = PrimeP::parse(2, "t").unwrap();
    let p2 = PrimeP::parse(2, "t^2+t+1").unwrap();
    let level = PolyA::parse(2, "t+1").unwrap();
    let ws = vec![PrimeP::parse(2, "t^2+t+1").unwrap(), PrimeP::parse(2, "t^3+t+1").unwrap()];
    for sequential in [false, true] {
        let mode = if sequential { "sequential" } else { "parallel" };
        par::set_sequential(sequential);
        group.bench_with_input(BenchmarkId::new("ss_scan_q2_r3", mode), &t, |b, p| {
            b.iter(|| enumerate_ss(3, p, 1 << 20).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("ss_scan_q2_r2_deg2", mode), &p2, |b, p| {
            b.iter(|| enumerate_ss(2, p, 1 << 20).unwrap())
        });
        let set = leveled_ss_set(3, &t, &level, 1 << 20).unwrap();
        group.bench_function(BenchmarkId::new("brandt_rows_q2_r3", mode), |b| {
            b.iter(|| operator_tables(&set, &ws[..1]).unwrap())
        });
    }
    par::set_sequential(false);
    group.finish();
}

criterion_group!(benches, workloads);
criterion_main!(benches);
