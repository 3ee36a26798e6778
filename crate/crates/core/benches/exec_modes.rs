use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tpgroup::arith::prodpi_collision_scan_with;
use tpgroup::group::{alternating_group, make_named_family, Family};
use tpgroup::tp::{tp_with, TpOptions};
use tpgroup::transversal::permanent_ryser_with;
use tpgroup::Exec;

fn modes() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    #[cfg(feature = "parallel")]
    v.push(("parallel", Exec::Parallel));
    v
}

fn permanent(c: &mut Criterion) {
    let mut group = c.benchmark_group("permanent_ryser");
    for n in [12usize, 16] {
        let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| ((i * 7 + j * 3) % 5) as i64).collect()).collect();
        for (name, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(name, n), &m, |b, m| {
                b.iter(|| permanent_ryser_with(m, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn tp_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("tp");
    group.sample_size(10);
    let groups = [
        ("a5", alternating_group(5).unwrap()),
        ("frob8", make_named_family(Family::FieldFrobenius(8)).unwrap()),
    ];
    for (id, g) in &groups {
        for (name, exec) in modes() {
            let opts = TpOptions { exec, ..Default::default() };
            group.bench_with_input(BenchmarkId::new(name, id), g, |b, g| b.iter(|| tp_with(g, &opts).unwrap()));
        }
    }
    group.finish();
}

fn collisions(c: &mut Criterion) {
    let mut group = c.benchmark_group("prodpi_collision_scan");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::new(name, 20), &20u64, |b, &s| {
            b.iter(|| prodpi_collision_scan_with(s, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, permanent, tp_table, collisions);
criterion_main!(benches);
