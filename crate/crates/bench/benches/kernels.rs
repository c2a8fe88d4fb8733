use criterion::{black_box, criterion_group, criterion_main, Criterion};
use torelli::diagrams::eta_inverse;
use torelli::johnson::{alt_depth, default_truncation, levine_depth, tau_alt, tau_alt_with};
use torelli::series::{Expansion, ExpansionKind};
use torelli_bench::{composite, separating};

fn tau(c: &mut Criterion) {
    let h = composite(2);
    let e = Expansion::new(ExpansionKind::Alternative, 3, default_truncation(2)).unwrap();
    let mut g = c.benchmark_group("tau_alt");
    g.bench_function("integer kernel, level 1", |b| b.iter(|| tau_alt(black_box(&h), 1).unwrap()));
    g.bench_function("rational series, level 1", |b| b.iter(|| tau_alt_with(black_box(&h), 1, &e).unwrap()));
    g.finish();
}

fn depths(c: &mut Criterion) {
    let d = separating(2);
    c.bench_function("alt depth of t_d, cap 5", |b| b.iter(|| alt_depth(black_box(&d), 5).unwrap()));
    c.bench_function("levine depth of t_d, cap 5", |b| b.iter(|| levine_depth(black_box(&d), 5).unwrap()));
}

fn diagrams(c: &mut Criterion) {
    let t = tau_alt(&composite(1), 1).unwrap();
    c.bench_function("eta inverse, genus 3 level 1", |b| b.iter(|| eta_inverse(black_box(&t)).unwrap()));
}

fn nielsen(c: &mut Criterion) {
    let h = composite(2);
    c.bench_function("inverse of a composite", |b| b.iter(|| black_box(&h).inverse().unwrap()));
}

criterion_group!(benches, tau, depths, diagrams, nielsen);
criterion_main!(benches);
