//! Benchmarks for the hot paths: coefficient-sum reports on long periodized
//! signals, closed-form spectrum moments, mask products, frame energies, and
//! the scan's per-point residual.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use uclab_core::bridge::{embed, embedding_identities, periodize};
use uclab_core::frames::{build_frame, default_support_radius, xi_product, MaskSpec};
use uclab_core::minimizer::system_residual;
use uclab_core::sampling;
use uclab_core::wavelets::BuiltinWavelet;

fn gauss_deriv(xi: f64) -> Complex64 {
    Complex64::new(BuiltinWavelet::GaussDeriv.spectrum(xi), 0.0)
}

fn bench_periodic_report(c: &mut Criterion) {
    let psi = periodize(gauss_deriv, 10, 1e-12).unwrap();
    c.bench_function("breitenberger_uc_j10", |b| {
        b.iter(|| black_box(&psi).breitenberger_uc().unwrap())
    });
}

fn bench_spectrum_moments(c: &mut Criterion) {
    let psi = periodize(gauss_deriv, 10, 1e-12).unwrap();
    let spectrum = embed(&psi, 1024.0).unwrap();
    c.bench_function("spectrum_moments_j10", |b| {
        b.iter(|| black_box(&spectrum).moments())
    });
}

fn bench_embedding_identities(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let psi = sampling::random_signal(&mut rng, 64, 32);
    c.bench_function("embedding_identities_64", |b| {
        b.iter(|| embedding_identities(black_box(&psi), 8.0).unwrap())
    });
}

fn bench_xi_product(c: &mut Criterion) {
    let mask = MaskSpec::haar();
    c.bench_function("xi_product_haar", |b| {
        b.iter(|| xi_product(black_box(&mask), 2, black_box(1001)).unwrap())
    });
}

fn bench_parseval(c: &mut Criterion) {
    let frame = build_frame(MaskSpec::haar(), 6, default_support_radius(6)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = sampling::random_trig_poly(&mut rng, 16).normalized().unwrap();
    c.bench_function("parseval_residual_j6_deg16", |b| {
        b.iter(|| frame.parseval_residual(black_box(&f)).unwrap())
    });
}

fn bench_scan_point(c: &mut Criterion) {
    c.bench_function("system_residual", |b| {
        b.iter(|| system_residual(black_box(6.4), black_box(1.03), black_box(0.5)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_periodic_report,
    bench_spectrum_moments,
    bench_embedding_identities,
    bench_xi_product,
    bench_parseval,
    bench_scan_point
);
criterion_main!(benches);
