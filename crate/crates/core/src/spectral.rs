//! Fourier analysis of radial and axial functions in `R^m`.
//!
//! For `f(x) = P(r) + (x/r) Q(r)` the transform `∫ e^{-i<x,ξ>} f(x) dV` equals
//! `S(ρ) + i (ξ/ρ) V(ρ)` with
//! `S(ρ) = (2π)^{m/2} ∫ r^{m-1} P(r) (rρ)^{1-m/2} J_{m/2-1}(rρ) dr` and
//! `V(ρ) = -(2π)^{m/2} ∫ r^{m-1} Q(r) (rρ)^{1-m/2} J_{m/2}(rρ) dr`.
//!
//! The Hankel integrals are split into panels at the Bessel zeros; the oscillatory tail is
//! summed by repeated averaging of partial sums.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use puruspe::{gamma, Jn, Jnu_Ynu};
use rayon::prelude::*;

use crate::clifford::{Multivector, Vector};
use crate::error::{precondition, Error, Result};
use crate::quad::{gauss_legendre, half_line, QuadConfig};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Surface area of the unit sphere in `R^m`.
pub fn sphere_area(m: usize) -> f64 {
    let h = m as f64 / 2.0;
    2.0 * PI.powf(h) / gamma(h)
}

/// `J_ν(z)`, `ν ≥ -1/2`, `z ≥ 0`.
pub fn bessel_j(nu: f64, z: f64) -> f64 {
    if z == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    let twice = 2.0 * nu;
    if twice == twice.round() && twice.round() as i64 % 2 != 0 {
        let c = (2.0 / (PI * z)).sqrt();
        match twice.round() as i64 {
            -1 => return c * z.cos(),
            1 => return c * z.sin(),
            3 => return c * (z.sin() / z - z.cos()),
            _ => {}
        }
    }
    if nu == nu.round() && nu >= 0.0 {
        return Jn(nu as u32, z);
    }
    Jnu_Ynu(nu, z).0
}

/// `z^{-μ} J_ν(z)` for `ν - μ ∈ {0, 1}`, continuous at `z = 0`.
pub fn bessel_kernel(nu: f64, mu: f64, z: f64) -> f64 {
    if z < 0.05 {
        // power series; eight terms are far beyond double precision at this radius
        let q = -0.25 * z * z;
        let mut term = 1.0 / gamma(nu + 1.0);
        let mut sum = term;
        for k in 1..8 {
            term *= q / (k as f64 * (k as f64 + nu));
            sum += term;
        }
        let lead = if nu > mu { z } else { 1.0 };
        return lead * 0.5f64.powf(nu) * sum;
    }
    bessel_j(nu, z) * z.powf(-mu)
}

/// `∫_{S^{m-1}} e^{-i r ρ <ω, ξ>} dξ = (2π)^{m/2} J_{m/2-1}(rρ) / (rρ)^{m/2-1}`.
pub fn sphere_kernel(r: f64, rho: f64, m: usize) -> f64 {
    let h = m as f64 / 2.0;
    (2.0 * PI).powf(h) * bessel_kernel(h - 1.0, h - 1.0, r * rho)
}

/// Quadrature on the unit sphere `S^{m-1}` for `m ≤ 3`, exact for trigonometric degree below `n`.
pub fn sphere_rule(m: usize, n: usize) -> Result<Vec<(Vector, f64)>> {
    match m {
        1 => Ok(vec![(Vector(vec![-1.0]), 1.0), (Vector(vec![1.0]), 1.0)]),
        2 => Ok((0..n)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / n as f64;
                (Vector(vec![t.cos(), t.sin()]), 2.0 * PI / n as f64)
            })
            .collect()),
        3 => {
            let gl = gauss_legendre(n);
            let nphi = 2 * n;
            let mut out = Vec::with_capacity(n * nphi);
            for (c, w) in gl.nodes.iter().zip(&gl.weights) {
                let s = (1.0 - c * c).sqrt();
                for k in 0..nphi {
                    let p = 2.0 * PI * k as f64 / nphi as f64;
                    out.push((Vector(vec![s * p.cos(), s * p.sin(), *c]), w * 2.0 * PI / nphi as f64));
                }
            }
            Ok(out)
        }
        _ => Err(Error::UnsupportedDimension(m)),
    }
}

type ZeroCache = Mutex<HashMap<u64, Arc<Vec<f64>>>>;

fn zero_cache() -> &'static ZeroCache {
    static CACHE: OnceLock<ZeroCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn bessel_j_prime(nu: f64, z: f64) -> f64 {
    nu / z * bessel_j(nu, z) - bessel_j(nu + 1.0, z)
}

fn refine_zero(nu: f64, guess: f64, lo: f64, hi: f64) -> f64 {
    let mut z = guess;
    for _ in 0..30 {
        let step = bessel_j(nu, z) / bessel_j_prime(nu, z);
        z -= step;
        if !(z > lo && z < hi) {
            break;
        }
        if step.abs() < 1e-15 * z {
            return z;
        }
    }
    if z > lo && z < hi && bessel_j(nu, z).abs() < 1e-12 {
        return z;
    }
    // bisection on a bracket found by scanning
    let mut a = lo.max(1e-8);
    let mut fa = bessel_j(nu, a);
    let step = 0.05;
    let mut b = a + step;
    while b < hi + PI {
        let fb = bessel_j(nu, b);
        if fa * fb <= 0.0 {
            break;
        }
        a = b;
        fa = fb;
        b += step;
    }
    for _ in 0..200 {
        let c = 0.5 * (a + b);
        let fc = bessel_j(nu, c);
        if fa * fc <= 0.0 {
            b = c;
        } else {
            a = c;
            fa = fc;
        }
        if b - a < 1e-15 * b {
            break;
        }
    }
    0.5 * (a + b)
}

/// The first `count` positive zeros of `J_ν`.
pub fn bessel_zeros(nu: f64, count: usize) -> Arc<Vec<f64>> {
    let key = nu.to_bits();
    if let Some(z) = zero_cache().lock().unwrap().get(&key) {
        if z.len() >= count {
            return z.clone();
        }
    }
    let mut zeros: Vec<f64> = zero_cache()
        .lock()
        .unwrap()
        .get(&key)
        .map(|z| z.as_ref().clone())
        .unwrap_or_default();
    let mu = 4.0 * nu * nu;
    while zeros.len() < count {
        let k = zeros.len() as f64 + 1.0;
        let b = (k + 0.5 * nu - 0.25) * PI;
        let e = 1.0 / (8.0 * b);
        let guess = b - (mu - 1.0) * e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) * e.powi(3) / 3.0;
        let lo = zeros.last().copied().unwrap_or(0.0) + 1e-3;
        let hi = lo + 2.0 * PI + nu.abs() * 2.0;
        let z = if (2.0 * nu).round() == 2.0 * nu && (2.0 * nu) as i64 == -1 {
            (k - 0.5) * PI
        } else if (2.0 * nu).round() == 2.0 * nu && (2.0 * nu) as i64 == 1 {
            k * PI
        } else {
            refine_zero(nu, guess.clamp(lo, hi), lo, hi)
        };
        zeros.push(z);
    }
    let arc = Arc::new(zeros);
    zero_cache().lock().unwrap().insert(key, arc.clone());
    arc
}

/// A radial profile `s(r)` with `|s(r)| = O(r^{-decay})`.
pub struct RadialProfile<'a> {
    f: Box<dyn Fn(f64) -> Complex64 + Send + Sync + 'a>,
    decay: f64,
    scale: f64,
}

impl<'a> RadialProfile<'a> {
    pub fn new(f: impl Fn(f64) -> Complex64 + Send + Sync + 'a, decay: f64) -> Self {
        RadialProfile { f: Box::new(f), decay, scale: 1.0 }
    }

    /// Length scale on which the profile varies (default 1).
    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn eval(&self, r: f64) -> Complex64 {
        (self.f)(r)
    }

    pub fn decay(&self) -> f64 {
        self.decay
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kernel {
    Scalar,
    Vector,
}

const EULER_TERMS: usize = 30;
const EULER_START: f64 = 20.0;

fn euler_sum(partials: &[Complex64]) -> Complex64 {
    let mut s = partials.to_vec();
    while s.len() > 1 {
        for i in 0..s.len() - 1 {
            s[i] = 0.5 * (s[i] + s[i + 1]);
        }
        s.pop();
    }
    s[0]
}

/// `∫_0^∞ r^{m-1} s(r) (rρ)^{1-m/2} J_ν(rρ) dr` with `ν = m/2 - 1` or `m/2`.
fn hankel(f: &(dyn Fn(f64) -> Complex64 + Sync), m: usize, kernel: Kernel, rho: f64, scale: f64, cfg: &QuadConfig) -> Complex64 {
    let mf = m as f64;
    let mu = mf / 2.0 - 1.0;
    let nu = match kernel {
        Kernel::Scalar => mu,
        Kernel::Vector => mu + 1.0,
    };
    if rho == 0.0 {
        return match kernel {
            Kernel::Vector => ZERO,
            Kernel::Scalar => half_line(cfg.radial_nodes, scale, |r| f(r) * r.powf(mf - 1.0)) * bessel_kernel(nu, mu, 0.0),
        };
    }
    let gl = gauss_legendre(cfg.panel_nodes);
    let integrand = |r: f64| f(r) * (r.powf(mf - 1.0) * bessel_kernel(nu, mu, r * rho));
    let piece = |lo: f64, hi: f64| -> Complex64 {
        let mut acc = ZERO;
        let mut x = lo;
        while x < hi {
            let step = (0.5 * scale).max(0.5 * x);
            let next = (x + step).min(hi);
            acc += gl.integrate(x, next, &integrand);
            x = next;
        }
        acc
    };
    let r_min = 2.0 * scale;
    let mut zeros = bessel_zeros(nu, 64);
    let mut k = 0usize;
    let mut lo = 0.0;
    let mut sum = ZERO;
    let mut quiet = 0;
    loop {
        if k >= zeros.len() {
            zeros = bessel_zeros(nu, 2 * zeros.len());
        }
        let hi = zeros[k] / rho;
        let t = piece(lo, hi);
        sum += t;
        k += 1;
        lo = hi;
        if lo >= r_min {
            if t.norm() <= 1e-17 * sum.norm() {
                quiet += 1;
                if quiet >= 3 {
                    return sum;
                }
            } else {
                quiet = 0;
            }
            if rho * lo > EULER_START {
                break;
            }
        }
    }
    if zeros.len() < k + EULER_TERMS {
        zeros = bessel_zeros(nu, k + EULER_TERMS + 64);
    }
    let mut partials = Vec::with_capacity(EULER_TERMS);
    for j in 0..EULER_TERMS {
        let hi = zeros[k + j] / rho;
        sum += piece(lo, hi);
        partials.push(sum);
        lo = hi;
    }
    euler_sum(&partials)
}

fn check_grid(rho: &[f64]) -> Result<()> {
    if rho.iter().any(|&r| !(r >= 0.0 && r.is_finite())) {
        return Err(precondition("ρ grid", "frequencies must be finite and nonnegative"));
    }
    if rho.windows(2).any(|w| w[1] <= w[0]) {
        return Err(precondition("ρ grid", "frequencies must be strictly increasing"));
    }
    Ok(())
}

fn check_decay(decay: f64, m: usize) -> Result<()> {
    if decay > m as f64 {
        Ok(())
    } else {
        Err(Error::Divergent("at infinity: radial profile decays too slowly for the dimension"))
    }
}

/// `F(ρ) = ∫_0^∞ r^{m-1} s(r) K(r, ρ) dr` with the sphere kernel `K`.
pub fn radial_ft(s: &RadialProfile, m: usize, rho: &[f64], cfg: &QuadConfig) -> Result<Vec<Complex64>> {
    check_grid(rho)?;
    check_decay(s.decay, m)?;
    let pre = (2.0 * PI).powf(m as f64 / 2.0);
    let f = |r: f64| s.eval(r);
    Ok(rho
        .par_iter()
        .map(|&p| hankel(&f, m, Kernel::Scalar, p, s.scale, cfg) * pre)
        .collect())
}

/// An axial function `f(x) = P(|x|) + (x/|x|) Q(|x|)` on `R^m`.
pub trait AxialFunction: Sync {
    fn dim(&self) -> usize;
    /// `(P(r), Q(r))`.
    fn profiles(&self, r: f64) -> (Complex64, Complex64);
    /// `|f(x)| = O(|x|^{-decay})`.
    fn decay(&self) -> f64;
    /// Length scale on which the profiles vary.
    fn length_scale(&self) -> f64 {
        1.0
    }
}

/// Samples of `S(ρ)` and `V(ρ)`; the transform is `S + i (ξ/ρ) V`.
#[derive(Clone, Debug, PartialEq)]
pub struct AxialSpectrum {
    pub m: usize,
    pub rho: Vec<f64>,
    pub scalar: Vec<Complex64>,
    pub vector: Vec<Complex64>,
}

impl AxialSpectrum {
    /// The multivector `S + i (ξ/ρ) V` at sample `k` for frequency `xi` with `|ξ| = rho[k]`.
    pub fn value(&self, k: usize, xi: &Vector) -> Result<Multivector> {
        let mut mv = Multivector::scalar(self.m, self.scalar[k])?;
        let rho = xi.norm();
        if rho > 0.0 {
            for (j, &x) in xi.0.iter().enumerate() {
                mv.coeffs_mut()[j + 1] = Complex64::new(0.0, 1.0) * self.vector[k] * (x / rho);
            }
        }
        Ok(mv)
    }
}

/// `(S(ρ), V(ρ))` at a single frequency.
pub fn axial_spectrum_at(psi: &dyn AxialFunction, rho: f64, cfg: &QuadConfig) -> (Complex64, Complex64) {
    let m = psi.dim();
    let pre = (2.0 * PI).powf(m as f64 / 2.0);
    let scale = psi.length_scale();
    let p = |r: f64| psi.profiles(r).0;
    let q = |r: f64| psi.profiles(r).1;
    let s = hankel(&p, m, Kernel::Scalar, rho, scale, cfg) * pre;
    let v = hankel(&q, m, Kernel::Vector, rho, scale, cfg) * (-pre);
    (s, v)
}

pub fn axial_spectrum(psi: &dyn AxialFunction, rho: &[f64], cfg: &QuadConfig) -> Result<AxialSpectrum> {
    check_grid(rho)?;
    check_decay(psi.decay(), psi.dim())?;
    let (scalar, vector): (Vec<_>, Vec<_>) = rho.par_iter().map(|&p| axial_spectrum_at(psi, p, cfg)).unzip();
    Ok(AxialSpectrum { m: psi.dim(), rho: rho.to_vec(), scalar, vector })
}
