use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use tensorial_bench::{builtin, dihedral_presentation, symmetric_generators};
use tensorial_core::fpgroup::DEFAULT_MAX_COSETS;
use tensorial_core::{construct_nu, todd_coxeter, ActionPair, PermGroup};

fn coset_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("todd_coxeter");
    for n in [16u32, 64, 256] {
        let p = dihedral_presentation(n);
        group.bench_with_input(BenchmarkId::new("dihedral", 2 * n), &p, |b, p| {
            b.iter(|| todd_coxeter(black_box(p), &[], DEFAULT_MAX_COSETS).unwrap())
        });
    }
    group.finish();
}

fn schreier_sims(c: &mut Criterion) {
    let mut group = c.benchmark_group("schreier_sims");
    for n in [6u32, 7, 9] {
        let gens = symmetric_generators(n);
        group.bench_with_input(BenchmarkId::new("symmetric", n), &gens, |b, gens| {
            b.iter(|| PermGroup::from_generators(black_box(gens.clone())).unwrap().order())
        });
    }
    group.finish();
}

fn nu_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("nu");
    group.sample_size(10);
    for name in ["S3", "D8", "Q8"] {
        let g = builtin(name);
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| construct_nu(black_box(g), DEFAULT_MAX_COSETS).unwrap())
        });
    }
    let pair = ActionPair::trivial(&builtin("C12"), &builtin("C8"));
    group.bench_function("eta(C12,C8;trivial)", |b| {
        b.iter(|| tensorial_core::construct_eta(black_box(&pair), DEFAULT_MAX_COSETS).unwrap())
    });
    group.finish();
}

criterion_group!(benches, coset_enumeration, schreier_sims, nu_construction);
criterion_main!(benches);
