use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use uniloc_bench::{kronecker_regular, linear_simple, random_mat, random_rep};
use uniloc_core::homcalc::{ext_space, hom_space};
use uniloc_core::localise::localize;
use uniloc_core::{FieldSpec, Quiver, Rep};

fn rref(c: &mut Criterion) {
    let mut g = c.benchmark_group("rref");
    for n in [16, 32, 64, 96] {
        for (name, field) in [("F_101", FieldSpec::Prime(101)), ("Q", FieldSpec::Rationals)] {
            if field == FieldSpec::Rationals && n > 32 {
                continue;
            }
            let m = random_mat(field, n, n + 3, n as u64);
            g.bench_with_input(BenchmarkId::new(name, n), &m, |b, m| b.iter(|| black_box(m.rref())));
        }
    }
    g.finish();
}

fn hom_and_ext(c: &mut Criterion) {
    let mut g = c.benchmark_group("hom_space");
    let f = FieldSpec::Prime(5);
    let kron = Arc::new(Quiver::kronecker());
    let a3 = Arc::new(Quiver::linear(3));
    for d in [2, 4, 8] {
        let m = random_rep(&kron, f, &[d, d + 1], 1);
        let n = random_rep(&kron, f, &[d + 1, d], 2);
        g.bench_with_input(BenchmarkId::new("kronecker", d), &(m, n), |b, (m, n)| {
            b.iter(|| black_box(hom_space(m, n).unwrap().dim()))
        });
        let m = random_rep(&a3, f, &[d, d, d], 3);
        let n = random_rep(&a3, f, &[d, d, d], 4);
        g.bench_with_input(BenchmarkId::new("a3_ext", d), &(m, n), |b, (m, n)| {
            b.iter(|| black_box(ext_space(m, n).unwrap().dim()))
        });
    }
    g.finish();
}

fn localisation(c: &mut Criterion) {
    let mut g = c.benchmark_group("localize");
    let f = FieldSpec::Prime(2);
    let s = kronecker_regular(f);
    let p2 = Rep::projective(s.quiver(), f, 1).unwrap();
    for steps in [5, 10, 20] {
        g.bench_with_input(BenchmarkId::new("kronecker_p2", steps), &steps, |b, &k| {
            b.iter(|| black_box(localize(&p2, &s, k).unwrap().steps.len()))
        });
    }
    let s = linear_simple(4, 1, f);
    let m = random_rep(s.quiver(), f, &[3, 3, 3, 3], 9);
    g.bench_function("a4_random", |b| {
        b.iter(|| black_box(localize(&m, &s, 10).unwrap().stabilized))
    });
    g.finish();
}

criterion_group!(benches, rref, hom_and_ext, localisation);
criterion_main!(benches);
