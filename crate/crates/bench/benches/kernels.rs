use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use cjw_core::cwt::{admissibility_with, cwt_forward, log_scales, rasterize};
use cjw_core::jacobi::{generate, rodrigues_residual};
use cjw_core::spectral::axial_spectrum;
use cjw_core::{Complex64, GridField, GridGeometry, Multivector, QuadConfig, Vector, WaveletDescriptor, WeightParams};

fn products(c: &mut Criterion) {
    let mut g = c.benchmark_group("geometric_product");
    for m in [2usize, 4, 6] {
        let coeffs = |s: f64| (0..1usize << m).map(|k| Complex64::new(s * k as f64, 1.0 - s)).collect();
        let a = Multivector::from_coeffs(m, coeffs(0.3)).unwrap();
        let b = Multivector::from_coeffs(m, coeffs(-0.7)).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |bench, _| bench.iter(|| black_box(&a) * black_box(&b)));
    }
    g.finish();
}

fn polynomials(c: &mut Criterion) {
    let w = WeightParams::new(-4.5, -3.0, 3).unwrap();
    c.bench_function("generate l=4", |b| b.iter(|| generate(black_box(4), &w)));
    let pts: Vec<Vector> = (0..100).map(|k| Vector::new(vec![0.01 * k as f64, 0.5, -0.2])).collect();
    c.bench_function("rodrigues_residual l=3, 100 points", |b| b.iter(|| rodrigues_residual(3, &w, black_box(&pts)).unwrap()));
}

fn spectra(c: &mut Criterion) {
    let wd = WaveletDescriptor::new(1, -4.0, -4.0, 2).unwrap();
    let cfg = QuadConfig::default();
    let rho: Vec<f64> = (0..64).map(|k| 0.1 * k as f64).collect();
    c.bench_function("axial_spectrum 64 radii", |b| b.iter(|| axial_spectrum(&wd, black_box(&rho), &cfg).unwrap()));
    c.bench_function("admissibility", |b| b.iter(|| admissibility_with(black_box(&wd), &cfg).unwrap()));
}

fn transforms(c: &mut Criterion) {
    let wd = WaveletDescriptor::new(1, -4.0, -4.0, 2).unwrap();
    let geo = GridGeometry::cube(2, 128, -8.0, 8.0).unwrap();
    c.bench_function("rasterize 128²", |b| b.iter(|| rasterize(&wd, &geo, 1.0, &[0.0, 0.0]).unwrap()));
    let f = GridField::from_scalar_fn(geo.clone(), |x| Complex64::new((-2.0 * x.dot(x)).exp(), 0.0));
    let scales = log_scales(geo.spacing[0], 16.0, 8).unwrap();
    let mut g = c.benchmark_group("cwt_forward");
    g.sample_size(10);
    g.bench_function("128², 8 scales", |b| b.iter(|| cwt_forward(black_box(&f), &wd, &scales).unwrap()));
    g.finish();
}

criterion_group!(benches, products, polynomials, spectra, transforms);
criterion_main!(benches);
