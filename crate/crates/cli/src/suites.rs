//! Verification suites. Each suite compares library output against an independent closed
//! form, a brute-force evaluation, or an identity between two different computations.

use std::f64::consts::{FRAC_PI_2, PI};

use anyhow::{bail, Result};
use cjw_core::axial::{
    axial_dirac, axial_eval, ck_extension, weight_coeffs, weight_dirac_radius, weight_eval_radius,
};
use cjw_core::clifford::{dirac_fd, Multivector};
use cjw_core::cwt::{cwt_forward, log_scales, parseval_check, rasterize, reconstruct};
use cjw_core::fft::NdFft;
use cjw_core::fractional::{fractional_derivative, fractional_integral, frft, DerivativeKind, Func1D, HermiteBasis, IntegralKind};
use cjw_core::jacobi::{generate, moment_integral, rodrigues_residual};
use cjw_core::spectral::{axial_spectrum_at, radial_ft, sphere_area, sphere_kernel, RadialProfile};
use cjw_core::{AxialPolynomial, AxialValue, Complex64, GridField, GridGeometry, QuadConfig, Vector, WaveletDescriptor, WeightParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Check, Report};

pub const SUITES: [&str; 10] = [
    "algebra",
    "derivatives",
    "recursion-closed-forms",
    "rodrigues",
    "moments",
    "fractional",
    "frft",
    "spectrum",
    "parseval",
    "roundtrip",
];

pub fn run_suite(name: &str) -> Result<Report> {
    let checks = match name {
        "algebra" => algebra(),
        "derivatives" => {
            let mut c = dirac_checks();
            c.push(coefficient_lemma());
            c
        }
        "recursion-closed-forms" => closed_forms(),
        "rodrigues" => rodrigues(),
        "moments" => moments(),
        "fractional" => fractional(),
        "frft" => frft_checks(),
        "spectrum" => {
            let mut c = sphere_lemma();
            c.push(spectrum_fft());
            c.extend(admissibility_checks());
            c
        }
        "parseval" => parseval(),
        "roundtrip" => roundtrip(),
        other => bail!("unknown suite `{other}`; expected one of {}", SUITES.join(", ")),
    };
    Ok(Report::from_checks(name, checks))
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn random_multivector(rng: &mut ChaCha8Rng, m: usize) -> Multivector {
    let coeffs = (0..1usize << m).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    Multivector::from_coeffs(m, coeffs).expect("dimension in range")
}

fn random_vector(rng: &mut ChaCha8Rng, m: usize, lo: f64, hi: f64) -> Vector {
    Vector::new((0..m).map(|_| rng.gen_range(lo..hi)).collect())
}

/// Point with a uniformly random direction and radius in `(0, rmax)`.
fn random_point(rng: &mut ChaCha8Rng, m: usize, rmax: f64) -> Vector {
    let v = random_vector(rng, m, -1.0, 1.0);
    let n = v.norm().max(1e-3);
    let r = rng.gen_range(0.0..rmax);
    Vector::new(v.0.iter().map(|c| c * r / n).collect())
}

fn diff(a: &Multivector, b: &Multivector) -> f64 {
    a.try_sub(b).expect("same dimension").norm()
}

/// Generator relations, associativity and the anti-involution laws on random multivectors.
pub fn algebra() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut generators = 0.0f64;
    let mut gen_cases = 0;
    for m in [2, 3, 4] {
        let one = Multivector::scalar(m, c(1.0)).unwrap();
        for j in 1..=m {
            let ej = Multivector::blade(m, &[j]).unwrap();
            generators = generators.max(diff(&(&ej * &ej), &-&one));
            gen_cases += 1;
            for k in (j + 1)..=m {
                let ek = Multivector::blade(m, &[k]).unwrap();
                generators = generators.max((&(&ej * &ek) + &(&ek * &ej)).norm());
                gen_cases += 1;
            }
        }
    }
    let draws = 1000;
    let (mut assoc, mut conj, mut inv, mut vecsq) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for k in 0..draws {
        let m = 2 + k % 3;
        let a = random_multivector(&mut rng, m);
        let b = random_multivector(&mut rng, m);
        let cc = random_multivector(&mut rng, m);
        let ab = &a * &b;
        assoc = assoc.max(diff(&(&ab * &cc), &(&a * &(&b * &cc))) / (a.norm() * b.norm() * cc.norm()));
        let scale = a.norm() * b.norm();
        conj = conj.max(diff(&ab.conjugate(), &(&b.conjugate() * &a.conjugate())) / scale);
        inv = inv.max(diff(&ab.inversion(), &(&b.inversion() * &a.inversion())) / scale);
        let x = random_vector(&mut rng, m, -2.0, 2.0);
        let y = random_vector(&mut rng, m, -2.0, 2.0);
        let (xm, ym) = (x.to_multivector().unwrap(), y.to_multivector().unwrap());
        let sym = &(&xm * &ym) + &(&ym * &xm);
        let expect = Multivector::scalar(m, c(-2.0 * x.dot(&y))).unwrap();
        vecsq = vecsq.max(diff(&sym, &expect) / (x.norm() * y.norm()));
    }
    vec![
        Check::new("generators square to -1 and anticommute", gen_cases, generators, 1e-12),
        Check::new("associativity", draws, assoc, 1e-12),
        Check::new("conjugation reverses products", draws, conj, 1e-12),
        Check::new("inversion reverses products", draws, inv, 1e-12),
        Check::new("xy + yx = -2<x,y>", draws, vecsq, 1e-12),
    ]
}

/// Max interior error of the grid Dirac operator against the exact polynomial one.
fn fd_error(p: &AxialPolynomial, m: usize, n: usize) -> f64 {
    let geo = GridGeometry::cube(m, n, -1.0, 1.0).unwrap();
    let field = GridField::from_multivector_fn(geo.clone(), |x| axial_eval(p, x).to_multivector(x).unwrap()).unwrap();
    let fd = dirac_fd(&field).unwrap();
    let exact = axial_dirac(p);
    (0..geo.len())
        .filter(|&i| geo.unravel(i).iter().all(|&k| k > 0 && k + 1 < n))
        .map(|i| {
            let x = geo.position(i);
            diff(&fd.sample(i), &axial_eval(&exact, &x).to_multivector(&x).unwrap())
        })
        .fold(0.0, f64::max)
}

fn d1(g: impl Fn(f64) -> f64, r: f64, h: f64) -> f64 {
    (g(r - 2.0 * h) - 8.0 * g(r - h) + 8.0 * g(r + h) - g(r + 2.0 * h)) / (12.0 * h)
}

/// Dirac of `A(r) + B(r) x/r` from profile derivatives: scalar `-B' - (m-1)B/r`, radial `A'`.
fn profile_dirac(f: impl Fn(f64) -> AxialValue, m: usize, r: f64) -> (Complex64, Complex64) {
    let h = 1e-3 * r.max(0.1);
    let da = Complex64::new(d1(|s| f(s).scalar.re, r, h), d1(|s| f(s).scalar.im, r, h));
    let db = Complex64::new(d1(|s| f(s).radial.re, r, h), d1(|s| f(s).radial.im, r, h));
    (-db - f(r).radial * ((m as f64 - 1.0) / r), da)
}

/// Exact Dirac operators against finite differences.
pub fn dirac_checks() -> Vec<Check> {
    let mut checks = Vec::new();
    // second order: halving h divides the error by about four
    let mut deficit = 0.0f64;
    for m in [2, 3] {
        let n = if m == 2 { 40 } else { 16 };
        let p = AxialPolynomial::new(m, vec![c(0.3), Complex64::new(-1.2, 0.4), c(0.8), Complex64::new(0.5, -0.7), c(-0.9)]).unwrap();
        let ratio = fd_error(&p, m, n) / fd_error(&p, m, 2 * n);
        deficit = deficit.max((2.0 - ratio.log2()).abs());
    }
    checks.push(Check::new("grid Dirac |2 - observed order|", 2, deficit, 0.5));

    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for _ in 0..40 {
        let m = rng.gen_range(1..=4);
        let w = WeightParams::new(rng.gen_range(-6.0..3.0), rng.gen_range(-6.0..3.0), m).unwrap();
        for r in [0.2, 0.9, 1.7, 3.1] {
            let exact = weight_dirac_radius(&w, r);
            let (s, rad) = profile_dirac(|t| weight_eval_radius(w.alpha, w.beta, t), m, r);
            let e = (exact.scalar - s).norm().max((exact.radial - rad).norm()) / (1.0 + exact.norm());
            worst = worst.max(e);
            cases += 1;
        }
    }
    checks.push(Check::new("weight Dirac vs profile differences", cases, worst, 1e-8));

    let mut worst = 0.0f64;
    for _ in 0..20 {
        let m = rng.gen_range(2..=4);
        let deg = rng.gen_range(1..=5);
        let coeffs: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let g = AxialPolynomial::from_real(m, &coeffs).unwrap();
        let x0: f64 = rng.gen_range(-0.5..0.5);
        let r: f64 = rng.gen_range(0.3..1.5);
        let at = |t0: f64, rr: f64| {
            let mut y = Vector::new(vec![0.0; m]);
            y.0[0] = rr;
            ck_extension(&g, t0, &y)
        };
        let h = 1e-3;
        let d0s = d1(|t| at(t, r).scalar.re, x0, h);
        let d0r = d1(|t| at(t, r).radial.re, x0, h);
        let (s, rad) = profile_dirac(|rr| at(x0, rr), m, r);
        let e = (c(d0s) + s).norm().max((c(d0r) + rad).norm()) / (1.0 + at(x0, r).norm());
        worst = worst.max(e);
    }
    checks.push(Check::new("CK extension is monogenic", 20, worst, 1e-8));
    checks
}

/// `(n+1) a_{n+1}(α,β) = β a_n(α,β-1) - α a_n(α-1,β)` for `n ≤ 30`.
pub fn coefficient_lemma() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let n_max = 30;
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (a, b) = (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let coeffs = |alpha: f64, beta: f64| -> Vec<f64> {
            weight_coeffs(&WeightParams::new(alpha, beta, 2).unwrap(), n_max + 1).coeffs().iter().map(|z| z.re).collect()
        };
        let (full, lower_b, lower_a) = (coeffs(a, b), coeffs(a, b - 1.0), coeffs(a - 1.0, b));
        let at = |v: &Vec<f64>, n: usize| v.get(n).copied().unwrap_or(0.0);
        for n in 0..=n_max {
            let lhs = (n as f64 + 1.0) * at(&full, n + 1);
            let rhs = b * at(&lower_b, n) - a * at(&lower_a, n);
            let scale = lhs.abs().max(rhs.abs());
            if scale > 0.0 {
                worst = worst.max((lhs - rhs).abs() / scale);
            }
        }
    }
    Check::new("weight coefficient recursion lemma", 50 * (n_max + 1), worst, 1e-11)
}

/// `G_0, G_1, G_2` against their closed forms in `(α, β, m)`.
pub fn closed_forms() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut worst = 0.0f64;
    let mut dropped = 0usize;
    let draws = 50;
    for _ in 0..draws {
        let (a, b) = (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let m = rng.gen_range(1..=6);
        let mf = m as f64;
        let w = WeightParams::new(a, b, m).unwrap();
        let expected: [Vec<f64>; 3] = [
            vec![1.0],
            vec![-(a - b), -(a + b)],
            vec![(a - b).powi(2) - mf * (a + b), (a - b) * (2.0 * a + 2.0 * b - 2.0), (a + b) * (a + b - 2.0 + mf)],
        ];
        for (l, exp) in expected.iter().enumerate() {
            let g = generate(l, &w);
            if g.poly.coeffs().len() != exp.len() {
                dropped += 1;
            }
            for (k, e) in exp.iter().enumerate() {
                let got = g.poly.coeff(k);
                worst = worst.max((got - c(*e)).norm() / e.abs().max(1.0));
            }
        }
    }
    vec![
        Check::new("G0, G1, G2 coefficients", draws * 3, worst, 1e-12),
        Check::new("unexpected degree changes", draws * 3, dropped as f64, 0.5),
    ]
}

/// Recursion output against the Rodrigues-type representation.
pub fn rodrigues() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let (mut all, mut equal) = (0.0f64, 0.0f64);
    let mut cases = 0;
    for m in [2, 3] {
        for _ in 0..20 {
            let (a, b) = (rng.gen_range(-10.0..-2.0), rng.gen_range(-10.0..-2.0));
            let pts: Vec<Vector> = (0..100).map(|_| random_point(&mut rng, m, 3.0)).collect();
            for l in 1..=3 {
                let w = WeightParams::new(a, b, m).unwrap();
                all = all.max(rodrigues_residual(l, &w, &pts).map(|r| r.max_residual).unwrap_or(f64::NAN));
                let w = WeightParams::new(a, a, m).unwrap();
                equal = equal.max(rodrigues_residual(l, &w, &pts).map(|r| r.max_residual).unwrap_or(f64::NAN));
                cases += 1;
            }
        }
    }
    vec![
        Check::new("residual, random (α, β) in [-10,-2]², ℓ ≤ 3, m ∈ {2,3}", cases, all, 1e-9),
        Check::new("residual, α = β draws, ℓ ≤ 3, m ∈ {2,3}", cases, equal, 1e-9),
    ]
}

/// Moment annihilation for the two reference descriptors.
pub fn moments() -> Vec<Check> {
    let cfg = QuadConfig::from_env();
    let mut below = 0.0f64;
    let mut full = 0.0f64;
    let mut refine = 0.0f64;
    let mut cases = 0;
    for (m, l, a) in [(2usize, 1usize, -4.0), (2, 2, -6.0)] {
        let w = WeightParams::new(a, a, m).unwrap();
        let kmax = l.min((-(m as f64 + l as f64 + 2.0 * a)) as usize);
        for k in 0..=kmax {
            let r = match moment_integral(k, l, &w, &cfg) {
                Ok(r) => r,
                Err(_) => {
                    full = f64::NAN;
                    continue;
                }
            };
            let e = r.scalar.norm().max(r.vector) / r.abs_integral;
            full = full.max(e);
            if k < l {
                below = below.max(e);
            }
            let fine = moment_integral(k, l, &w, &cfg.doubled()).unwrap();
            refine = refine.max((fine.scalar - r.scalar).norm().max((fine.vector - r.vector).abs()) / r.abs_integral);
            cases += 1;
        }
    }
    vec![
        Check::new("moments 0 ≤ k ≤ min(ℓ, -(m+ℓ+α+β)) vanish", cases, full, 1e-8),
        Check::new("moments k < ℓ vanish", cases, below, 1e-8),
        Check::new("moments stable under node doubling", cases, refine, 1e-3),
    ]
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Fractional integrals and derivatives against closed forms and the semigroup law.
pub fn fractional() -> Vec<Check> {
    const RL: IntegralKind = IntegralKind::RiemannLiouville;
    let poly = Func1D::new(|t| 1.0 + 2.0 * t - 0.7 * t * t + 0.2 * t.powi(3));
    let mut semigroup = 0.0f64;
    let pairs = [(0.3, 0.5), (0.7, 1.2), (1.5, 0.4), (0.25, 0.25)];
    for (alpha, beta) in pairs {
        let inner = poly.clone();
        let jb = Func1D::new(move |s| if s > 0.0 { fractional_integral(&inner, beta, 0.0, s, RL).unwrap_or(f64::NAN) } else { 0.0 });
        for t in [0.5, 1.3, 2.2] {
            let composed = fractional_integral(&jb, alpha, 0.0, t, RL).unwrap_or(f64::NAN);
            let direct = fractional_integral(&poly, alpha + beta, 0.0, t, RL).unwrap_or(f64::NAN);
            semigroup = semigroup.max(rel(composed, direct));
        }
    }
    let lin = Func1D::new(|t| t).with_derivative(|_| 1.0);
    let mut caputo_half = 0.0f64;
    for t in [0.3, 1.0, 2.2] {
        let v = fractional_derivative(&lin, 0.5, 0.0, t, DerivativeKind::Caputo).unwrap_or(f64::NAN);
        caputo_half = caputo_half.max(rel(v, 2.0 * (t / PI).sqrt()));
    }
    let constant = Func1D::new(|_| 4.2);
    let mut caputo_const = 0.0f64;
    let orders = [0.1, 0.5, 0.9, 1.3, 2.5];
    for alpha in orders {
        let v = fractional_derivative(&constant, alpha, 0.0, 1.4, DerivativeKind::Caputo).unwrap_or(f64::NAN);
        caputo_const = caputo_const.max(v.abs());
    }
    // J^α 1 from a > 0 is (log(t/a))^α / Γ(α+1); Γ at these points is elementary
    let one = Func1D::new(|_| 1.0);
    let mut hadamard = 0.0f64;
    let gammas = [(0.5, PI.sqrt() * 0.5), (1.0, 1.0), (2.0, 2.0), (3.0, 6.0)];
    for (alpha, g) in gammas {
        for (a, t) in [(1.0, 2.7), (0.5, 3.0)] {
            let v = fractional_integral(&one, alpha, a, t, IntegralKind::Hadamard).unwrap_or(f64::NAN);
            hadamard = hadamard.max(rel(v, (t / a).ln().powf(alpha) / g));
        }
    }
    vec![
        Check::new("J^α J^β = J^(α+β)", pairs.len() * 3, semigroup, 1e-7),
        Check::new("Caputo D^1/2 t = 2 sqrt(t/π)", 3, caputo_half, 1e-6),
        Check::new("Caputo derivative of a constant (absolute)", orders.len(), caputo_const, 1e-12),
        Check::new("Hadamard integral of 1", gammas.len() * 2, hadamard, 1e-7),
    ]
}

fn rel_l2(a: &[Complex64], b: &[Complex64]) -> f64 {
    let d: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let n: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (d / n).sqrt()
}

/// Fractional Fourier transform: Hermite eigenrelation, additivity and unitarity.
pub fn frft_checks() -> Vec<Check> {
    let basis = HermiteBasis::default_shared();
    let mut eigen = 0.0f64;
    for n in 0..=20 {
        let h: Vec<Complex64> = basis.values[n].iter().map(|v| c(*v)).collect();
        let phase = Complex64::new(0.0, -1.0).powi(n as i32);
        let expect: Vec<Complex64> = h.iter().map(|v| v * phase).collect();
        let out = frft(&h, FRAC_PI_2, &basis).map(|o| rel_l2(&o.values, &expect)).unwrap_or(f64::NAN);
        eigen = eigen.max(out);
    }
    let mut f = vec![Complex64::new(0.0, 0.0); basis.grid.len()];
    for (n, w) in [(1, Complex64::new(0.7, 0.0)), (4, Complex64::new(0.0, 1.1)), (9, Complex64::new(-0.5, 0.5)), (17, c(0.2))] {
        for (o, v) in f.iter_mut().zip(&basis.values[n]) {
            *o += w * v;
        }
    }
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let n0 = norm(&f);
    let (mut additive, mut unitary) = (0.0f64, 0.0f64);
    let pairs = [(0.3, 0.9), (1.2, -0.4), (2.0, 2.5)];
    for (a, b) in pairs {
        let step = frft(&f, a, &basis).and_then(|o| frft(&o.values, b, &basis)).map(|o| o.values);
        let direct = frft(&f, a + b, &basis).map(|o| o.values);
        match (step, direct) {
            (Ok(ab), Ok(d)) => {
                additive = additive.max(rel_l2(&ab, &d));
                unitary = unitary.max((norm(&d) - n0).abs() / n0);
            }
            _ => additive = f64::NAN,
        }
    }
    vec![
        Check::new("F_(π/2) H_n = (-i)^n H_n, n ≤ 20", 21, eigen, 1e-7),
        Check::new("F_a F_b = F_(a+b)", pairs.len(), additive, 1e-7),
        Check::new("norm preservation", pairs.len(), unitary, 1e-8),
    ]
}

/// `∫_{S^{m-1}} e^{-i z <ω, e>} dω` by a trapezoid rule on the circle or Simpson's rule in `cos θ`.
fn direct_sphere(z: f64, m: usize) -> f64 {
    if m == 2 {
        let n = 400;
        return (0..n).map(|k| (z * (2.0 * PI * k as f64 / n as f64).cos()).cos()).sum::<f64>() * 2.0 * PI / n as f64;
    }
    let n = 4000;
    let h = 2.0 / n as f64;
    let f = |t: f64| (z * t).cos();
    let mut s = f(-1.0) + f(1.0);
    for k in 1..n {
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * f(-1.0 + k as f64 * h);
    }
    2.0 * PI * s * h / 3.0
}

/// Sphere integral kernel and radial transforms of Gaussians against closed forms.
pub fn sphere_lemma() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut sphere = 0.0f64;
    for m in [2, 3] {
        for _ in 0..20 {
            let (r, rho) = (rng.gen_range(0.0..5.0), rng.gen_range(0.0..4.0));
            let k = sphere_kernel(r, rho, m);
            let d = direct_sphere(r * rho, m);
            // relative to the kernel, floored at a thousandth of its peak near its zeros
            sphere = sphere.max((k - d).abs() / d.abs().max(1e-3 * sphere_area(m)));
        }
    }
    let cfg = QuadConfig::from_env();
    let mut gauss = 0.0f64;
    let mut cases = 0;
    for cc in [0.5, 1.0, 2.0] {
        // band where the transform stays above 1e-6 of its peak; beyond it the oscillatory
        // integral cancels to below f64 resolution relative to the value
        let top = (4.0 * cc * 1e6f64.ln()).sqrt();
        let rho: Vec<f64> = (0..25).map(|k| top * k as f64 / 24.0).collect();
        for m in 1..=3 {
            let g = RadialProfile::new(move |r| c((-cc * r * r).exp()), f64::INFINITY);
            match radial_ft(&g, m, &rho, &cfg) {
                Ok(got) => {
                    for (p, v) in rho.iter().zip(&got) {
                        let exact = (PI / cc).powf(m as f64 / 2.0) * (-p * p / (4.0 * cc)).exp();
                        gauss = gauss.max((v - exact).norm() / exact);
                        cases += 1;
                    }
                }
                Err(_) => gauss = f64::NAN,
            }
        }
    }
    vec![
        Check::new("sphere kernel vs direct quadrature", 40, sphere, 1e-6),
        Check::new("radial transform of e^(-c r²)", cases, gauss, 1e-7),
    ]
}

/// Quadrature spectrum of two mother wavelets against the FFT of their rasterization.
pub fn spectrum_fft() -> Check {
    let cfg = QuadConfig::from_env();
    let n = 128;
    let half = 16.0;
    let geo = GridGeometry::cube(2, n, -half, half).unwrap();
    let h = geo.spacing[0];
    let plan = NdFft::new(&geo.shape);
    let dk = 2.0 * PI / (n as f64 * h);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for (l, a) in [(1, -4.0), (2, -6.0)] {
        let wd = WaveletDescriptor::new(l, a, a, 2).unwrap();
        let field = rasterize(&wd, &geo, 1.0, &[0.0, 0.0]).unwrap();
        let spectra: Vec<Vec<Complex64>> = (0..=2)
            .map(|ch| {
                let mut d = field.channel(ch).unwrap().to_vec();
                plan.forward(&mut d);
                d
            })
            .collect();
        let (mut err, mut peak) = (0.0f64, 0.0f64);
        // low band: the first eight wavenumbers per axis
        for k1 in 0..8usize {
            for k2 in 0..8usize {
                let xi = [k1 as f64 * dk, k2 as f64 * dk];
                let rho = xi[0].hypot(xi[1]);
                let (s, v) = axial_spectrum_at(&wd, rho, &cfg);
                let mut exact = [s, c(0.0), c(0.0)];
                if rho > 0.0 {
                    for j in 0..2 {
                        exact[j + 1] = Complex64::new(0.0, 1.0) * v * (xi[j] / rho);
                    }
                }
                // grid origin at -half: shift phase and cell volume
                let phase = Complex64::from_polar(h * h, half * (xi[0] + xi[1]));
                for ch in 0..=2 {
                    err = err.max((spectra[ch][k1 * n + k2] * phase - exact[ch]).norm());
                    peak = peak.max(exact[ch].norm());
                }
                cases += 1;
            }
        }
        worst = worst.max(err / peak);
    }
    Check::new("spectrum vs FFT of rasterized mother, 128², low band", cases, worst, 1e-3)
}

/// Admissibility constants of the two reference wavelets.
pub fn admissibility_checks() -> Vec<Check> {
    let cfg = QuadConfig::from_env();
    let mut finite = 0.0f64;
    let mut doubling = 0.0f64;
    let mut scaling = 0.0f64;
    for (l, a) in [(1, -4.0), (2, -6.0)] {
        let wd = WaveletDescriptor::new(l, a, a, 2).unwrap();
        let base = cjw_core::cwt::admissibility_with(&wd, &cfg);
        let fine = cjw_core::cwt::admissibility_with(&wd, &cfg.doubled());
        let scaled = cjw_core::cwt::admissibility_with(&wd.scaled(3.0), &cfg);
        match (base, fine, scaled) {
            (Ok(b), Ok(f), Ok(s)) if b.is_finite() && b > 0.0 => {
                doubling = doubling.max(rel(f, b));
                scaling = scaling.max(rel(s, 9.0 * b));
            }
            _ => finite = 1.0,
        }
    }
    vec![
        Check::new("admissibility finite and positive (failures)", 2, finite, 0.5),
        Check::new("admissibility change under node doubling", 2, doubling, 1e-3),
        Check::new("A(3ψ) = 9 A(ψ)", 2, scaling, 1e-10),
    ]
}

/// Reference signal of the Parseval and round-trip suites: a Gaussian of width 1/2 with its
/// grid mean removed, normalized to unit norm.
pub fn reference_signal(geo: &GridGeometry) -> GridField {
    let raw: Vec<f64> = (0..geo.len()).map(|i| (-2.0 * geo.position(i).dot(&geo.position(i))).exp()).collect();
    let mean = raw.iter().sum::<f64>() / raw.len() as f64;
    let mut f = GridField::empty(geo.clone());
    f.set_channel(0, raw.iter().map(|v| c(v - mean)).collect()).unwrap();
    let n = f.l2_norm();
    for v in f.channel_mut(0).unwrap().iter_mut() {
        *v /= n;
    }
    f
}

/// Wavelet, grid and scale band of the Parseval and round-trip suites.
pub fn reference_setup() -> (WaveletDescriptor, GridGeometry) {
    (WaveletDescriptor::new(1, -4.0, -4.0, 2).unwrap(), GridGeometry::cube(2, 128, -8.0, 8.0).unwrap())
}

const SCALE_COUNTS: [usize; 3] = [8, 16, 32];

fn scale_band(geo: &GridGeometry, count: usize) -> Vec<f64> {
    log_scales(geo.spacing[0], 16.0, count).unwrap()
}

fn worst_ratio(errs: &[f64]) -> f64 {
    errs.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max)
}

/// Discretized Parseval identity on the reference signal.
pub fn parseval() -> Vec<Check> {
    let (wd, geo) = reference_setup();
    let f = reference_signal(&geo);
    let gaps: Vec<f64> = SCALE_COUNTS
        .iter()
        .map(|&s| parseval_check(&f, &f, &wd, &scale_band(&geo, s)).map(|r| r.gap).unwrap_or(f64::NAN))
        .collect();
    let zero = GridField::empty(geo.clone());
    let z = parseval_check(&f, &zero, &wd, &scale_band(&geo, 8)).map(|r| r.lhs.norm() + r.rhs.norm()).unwrap_or(f64::NAN);
    vec![
        Check::new("Parseval gap, 128², 32 scales", 1, gaps[2], 0.05),
        Check::new("Parseval gap ratio under 8 → 16 → 32 scales", 2, worst_ratio(&gaps), 1.0),
        Check::new("Parseval with g = 0", 1, z, 1e-300),
    ]
}

/// Forward transform then reconstruction of the reference signal.
pub fn roundtrip() -> Vec<Check> {
    let (wd, geo) = reference_setup();
    let f = reference_signal(&geo);
    let target = f.channel(0).unwrap();
    let mut residual = 0.0f64;
    let errs: Vec<f64> = SCALE_COUNTS
        .iter()
        .map(|&s| {
            let rec = cwt_forward(&f, &wd, &scale_band(&geo, s)).and_then(|cw| reconstruct(&cw, &wd));
            match rec {
                Ok(r) => {
                    residual = residual.max(r.residual);
                    rel_l2(r.field.channel(0).unwrap(), target)
                }
                Err(_) => f64::NAN,
            }
        })
        .collect();
    vec![
        Check::new("round-trip relative L2 error, 128², 32 scales", 1, errs[2], 0.05),
        Check::new("round-trip error ratio under 8 → 16 → 32 scales", 2, worst_ratio(&errs), 1.0),
        Check::new("non-scalar residual of the reconstruction", 3, residual, 1e-8),
    ]
}
