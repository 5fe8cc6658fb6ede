use cjw_core::cwt::rasterize;
use cjw_core::fft::NdFft;
use cjw_core::spectral::{
    axial_spectrum, axial_spectrum_at, bessel_j, radial_ft, sphere_area, sphere_kernel, AxialFunction, RadialProfile,
};
use cjw_core::{Complex64, GridGeometry, QuadConfig, Vector, WaveletDescriptor};
use std::f64::consts::PI;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `∫_{S^{m-1}} e^{-i z ⟨ω, e⟩} dω`: trapezoid on the circle, composite Simpson in `cos θ` on the sphere.
fn direct_sphere(z: f64, m: usize) -> f64 {
    match m {
        2 => {
            let n = 400;
            (0..n).map(|k| (z * (2.0 * PI * k as f64 / n as f64).cos()).cos()).sum::<f64>() * 2.0 * PI / n as f64
        }
        3 => {
            let n = 4000;
            let h = 2.0 / n as f64;
            let f = |t: f64| (z * t).cos();
            let mut s = f(-1.0) + f(1.0);
            for k in 1..n {
                let t = -1.0 + k as f64 * h;
                s += if k % 2 == 1 { 4.0 } else { 2.0 } * f(t);
            }
            2.0 * PI * s * h / 3.0
        }
        _ => unreachable!(),
    }
}

#[test]
fn sphere_kernel_examples() {
    for m in 2..=6 {
        assert!((sphere_kernel(0.0, 1.0, m) - sphere_area(m)).abs() < 1e-13 * sphere_area(m));
        assert!((sphere_kernel(1e-9, 1.0, m) - sphere_area(m)).abs() < 1e-12 * sphere_area(m));
    }
    assert!((sphere_area(2) - 2.0 * PI).abs() < 1e-15);
    assert!((sphere_area(3) - 4.0 * PI).abs() < 1e-14);
    let z = 2.3;
    assert!((sphere_kernel(z, 1.0, 3) - 4.0 * PI * z.sin() / z).abs() < 1e-13);
    assert!((sphere_kernel(1.0, 1.0, 2) - 2.0 * PI * 0.765_197_686_557_966_6).abs() < 1e-13);
    assert!((bessel_j(0.5, z) - (2.0 / (PI * z)).sqrt() * z.sin()).abs() < 1e-15);
}

#[test]
fn sphere_kernel_matches_direct_quadrature() {
    for m in [2, 3] {
        for (r, rho) in [(0.1, 0.3), (1.0, 1.0), (2.5, 1.7), (7.0, 3.0), (0.0, 5.0)] {
            let k = sphere_kernel(r, rho, m);
            let d = direct_sphere(r * rho, m);
            assert!((k - d).abs() < 1e-6 * k.abs().max(1e-3 * sphere_area(m)), "m={m} r={r} ρ={rho}: {k} vs {d}");
        }
    }
}

#[test]
fn gaussian_family_transforms() {
    let cfg = QuadConfig::default();
    for c in [0.5, 1.0, 2.0] {
        // values above 1e-6 of the peak; further out the integral cancels below f64 resolution
        let top = (4.0 * c * 1e6f64.ln()).sqrt();
        let rho: Vec<f64> = (0..25).map(|k| top * k as f64 / 24.0).collect();
        for m in 1..=3 {
            let g = RadialProfile::new(move |r| Complex64::new((-c * r * r).exp(), 0.0), f64::INFINITY);
            let got = radial_ft(&g, m, &rho, &cfg).unwrap();
            for (p, v) in rho.iter().zip(&got) {
                let exact = (PI / c).powf(m as f64 / 2.0) * (-p * p / (4.0 * c)).exp();
                assert!((v - exact).norm() < 1e-7 * exact, "c={c} m={m} ρ={p}: {v} vs {exact}");
            }
        }
    }
}

#[test]
fn radial_ft_examples() {
    let cfg = QuadConfig::default();
    let s = RadialProfile::new(|r| Complex64::new((1.0 + r * r).powi(-2), 0.0), 4.0);
    assert!((radial_ft(&s, 2, &[0.0], &cfg).unwrap()[0].re - PI).abs() < 1e-10);
    let z = RadialProfile::new(|_| ZERO, f64::INFINITY);
    assert!(radial_ft(&z, 3, &[0.0, 1.0, 5.0], &cfg).unwrap().iter().all(|v| *v == ZERO));
}

struct Gaussian {
    m: usize,
    vector: bool,
}

impl AxialFunction for Gaussian {
    fn dim(&self) -> usize {
        self.m
    }
    fn profiles(&self, r: f64) -> (Complex64, Complex64) {
        let g = Complex64::new((-0.5 * r * r).exp(), 0.0);
        if self.vector {
            (ZERO, g * r)
        } else {
            (g, ZERO)
        }
    }
    fn decay(&self) -> f64 {
        f64::INFINITY
    }
}

#[test]
fn gaussian_axial_spectra() {
    let cfg = QuadConfig::default();
    let rho: Vec<f64> = (0..12).map(|k| 0.5 * k as f64).collect();
    for m in [2, 3] {
        let pre = (2.0 * PI).powf(m as f64 / 2.0);
        let scalar = axial_spectrum(&Gaussian { m, vector: false }, &rho, &cfg).unwrap();
        let direct = radial_ft(&RadialProfile::new(|r| Complex64::new((-0.5 * r * r).exp(), 0.0), f64::INFINITY), m, &rho, &cfg)
            .unwrap();
        assert!(scalar.vector.iter().all(|v| *v == ZERO));
        for (a, b) in scalar.scalar.iter().zip(&direct) {
            assert!((a - b).norm() < 1e-14 * pre);
        }
        // x e^{-r²/2} transforms to -i ξ (2π)^{m/2} e^{-ρ²/2}, so V = -ρ (2π)^{m/2} e^{-ρ²/2}
        let vec = axial_spectrum(&Gaussian { m, vector: true }, &rho, &cfg).unwrap();
        for (k, p) in rho.iter().enumerate() {
            let exact = -p * pre * (-0.5 * p * p).exp();
            assert!(vec.scalar[k].norm() < 1e-14);
            assert!((vec.vector[k].re - exact).abs() < 1e-9 * pre, "m={m} ρ={p}");
        }
        assert_eq!(vec.vector[0], ZERO);
    }
}

#[test]
fn equal_exponent_wavelets_have_real_spectra() {
    let cfg = QuadConfig::default();
    let rho: Vec<f64> = (0..30).map(|k| 0.25 * k as f64).collect();
    for (l, a, m) in [(1, -4.0, 2), (2, -6.0, 2), (1, -5.0, 3), (3, -8.0, 3)] {
        let wd = WaveletDescriptor::new(l, a, a, m).unwrap();
        let sp = axial_spectrum(&wd, &rho, &cfg).unwrap();
        let peak = sp.scalar.iter().chain(&sp.vector).map(|v| v.norm()).fold(0.0, f64::max);
        for k in 0..rho.len() {
            assert!(sp.scalar[k].im.abs() < 1e-9 * peak && sp.vector[k].im.abs() < 1e-9 * peak);
        }
        // zero mean
        assert!(sp.scalar[0].norm() < 1e-9 * peak, "({l},{a},{m}) mean {}", sp.scalar[0]);
        assert_eq!(sp.vector[0], ZERO);
        // decaying envelope
        let tail = axial_spectrum(&wd, &[20.0, 40.0, 80.0], &cfg).unwrap();
        let mags: Vec<f64> = tail.scalar.iter().zip(&tail.vector).map(|(s, v)| s.norm() + v.norm()).collect();
        assert!(mags[0] < 1e-3 * peak && mags[1] < mags[0] && mags[2] < mags[1], "{mags:?}");
    }
}

#[test]
fn spectrum_matches_grid_fft() {
    let cfg = QuadConfig::default();
    let n = 128;
    let half = 16.0;
    let geo = GridGeometry::cube(2, n, -half, half).unwrap();
    let h = geo.spacing[0];
    for (l, a) in [(1, -4.0), (2, -6.0)] {
        let wd = WaveletDescriptor::new(l, a, a, 2).unwrap();
        let field = rasterize(&wd, &geo, 1.0, &[0.0, 0.0]).unwrap();
        let plan = NdFft::new(&geo.shape);
        let mut spectra = Vec::new();
        for c in 0..=2 {
            let mut data = field.channel(c).unwrap().to_vec();
            plan.forward(&mut data);
            spectra.push(data);
        }
        let dk = 2.0 * PI / (n as f64 * h);
        let mut worst: f64 = 0.0;
        let mut peak: f64 = 0.0;
        for k1 in 0..8usize {
            for k2 in 0..8usize {
                let xi = Vector::new(vec![k1 as f64 * dk, k2 as f64 * dk]);
                let rho = xi.norm();
                let (s, v) = axial_spectrum_at(&wd, rho, &cfg);
                let idx = k1 * n + k2;
                let phase = Complex64::from_polar(h * h, half * (xi.0[0] + xi.0[1]));
                let mut exact = [s, ZERO, ZERO];
                if rho > 0.0 {
                    for j in 0..2 {
                        exact[j + 1] = Complex64::new(0.0, 1.0) * v * (xi.0[j] / rho);
                    }
                }
                for c in 0..=2 {
                    let fft = spectra[c][idx] * phase;
                    worst = worst.max((fft - exact[c]).norm());
                    peak = peak.max(exact[c].norm());
                }
            }
        }
        assert!(worst < 1e-3 * peak, "ℓ={l}: {worst} vs peak {peak}");
    }
}
