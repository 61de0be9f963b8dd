use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use grundylab::closed_forms::{asm_ruler_table, subspace_recurrence};
use grundylab::game::{solve_elementwise, TurningFamily};
use grundylab::nimber::{nim_mul, Nimber};
use grundylab::partition::h_sequence;
use grundylab::zoo::{asm_poset, set_partition_poset};

fn nimbers(c: &mut Criterion) {
    c.bench_function("nim_mul 64-bit", |b| {
        let (x, y) = (Nimber(0x9e37_79b9_7f4a_7c15), Nimber(0xd1b5_4a32_d192_ed03));
        b.iter(|| nim_mul(black_box(x), black_box(y)))
    });
    c.bench_function("nim_mul 8-bit table", |b| {
        b.iter(|| {
            let mut acc = Nimber::ZERO;
            for i in 0..256 {
                for j in 0..256 {
                    acc += nim_mul(Nimber(i), Nimber(j));
                }
            }
            acc
        })
    });
}

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("ruler on A_n");
    for n in [6, 8, 10] {
        let a = asm_poset(n).unwrap();
        let family = TurningFamily::ruler(&a.poset);
        group.bench_with_input(BenchmarkId::new("full solver", n), &n, |b, _| {
            b.iter(|| solve_elementwise(&a.poset, &family))
        });
        group.bench_with_input(BenchmarkId::new("fibre reduced", n), &n, |b, &n| {
            b.iter(|| asm_ruler_table(n, None).unwrap())
        });
    }
    group.finish();

    let pi = set_partition_poset(6).unwrap();
    let family = TurningFamily::ruler(&pi.poset);
    c.bench_function("ruler on Pi_6", |b| {
        b.iter(|| solve_elementwise(&pi.poset, &family))
    });
}

fn recurrences(c: &mut Criterion) {
    c.bench_function("h_sequence(12)", |b| {
        b.iter(|| h_sequence(black_box(12), None).unwrap())
    });
    c.bench_function("subspace recurrence q=3 d=200", |b| {
        b.iter(|| subspace_recurrence(3, black_box(200)))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = nimbers, solvers, recurrences
}
criterion_main!(benches);
