//! Continuous wavelet transform with the spheroidal Clifford-Jacobi wavelets
//! `ψ(x) = G_{ℓ,m}^{α+ℓ,β+ℓ}(x) ω_{α,β}(x)`.
//!
//! Coefficients are `C(a,b) = ∫ ψ^a_b(x) conj(f(x)) dV` with `ψ^a_b(x) = a^{-m/2} ψ((x-b)/a)`,
//! evaluated for all grid translations `b` at once by periodic FFT correlation. The grid is
//! treated as one period of a periodic field.

use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::axial::{axial_eval, weight_eval_radius, AxialValue, WeightParams};
use crate::clifford::{GridField, GridGeometry, Vector};
use crate::error::{precondition, Error, Result};
use crate::fft::{signed_index, NdFft};
use crate::jacobi::{generate, JacobiPolynomial};
use crate::quad::QuadConfig;
use crate::spectral::{axial_spectrum_at, AxialFunction};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A mother wavelet `c ψ_{ℓ,m}^{α,β}` with amplitude `c` (default 1).
#[derive(Clone, Debug)]
pub struct WaveletDescriptor {
    order: usize,
    params: WeightParams,
    jacobi: JacobiPolynomial,
    amplitude: f64,
    admissibility: OnceLock<f64>,
}

impl WaveletDescriptor {
    pub fn new(l: usize, alpha: f64, beta: f64, m: usize) -> Result<Self> {
        let params = WeightParams::new(alpha, beta, m)?;
        let lf = l as f64;
        let mf = m as f64;
        if l == 0 {
            return Err(precondition("ℓ ≥ 1", "the wavelet order must be positive"));
        }
        if alpha + beta + mf + lf >= 0.0 {
            return Err(precondition(
                "α + β + m + ℓ < 0",
                format!("got {}", alpha + beta + mf + lf),
            ));
        }
        if 2.0 * lf + alpha + beta + mf >= 1.0 {
            return Err(precondition(
                "2ℓ + α + β + m < 1",
                format!("got {}", 2.0 * lf + alpha + beta + mf),
            ));
        }
        let shifted = WeightParams::new(alpha + lf, beta + lf, m)?;
        Ok(WaveletDescriptor {
            order: l,
            params,
            jacobi: generate(l, &shifted),
            amplitude: 1.0,
            admissibility: OnceLock::new(),
        })
    }

    /// The same wavelet multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        WaveletDescriptor {
            order: self.order,
            params: self.params,
            jacobi: self.jacobi.clone(),
            amplitude: self.amplitude * c,
            admissibility: OnceLock::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn params(&self) -> &WeightParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.params.m
    }

    pub fn jacobi(&self) -> &JacobiPolynomial {
        &self.jacobi
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// `ψ` at any point of radius `r`.
    pub fn eval_radius(&self, r: f64) -> AxialValue {
        let (plus_g, minus_g) = self.jacobi.poly.eval_pair(r);
        let g = AxialValue::from_pair(r, plus_g, minus_g);
        let w = weight_eval_radius(self.params.alpha, self.params.beta, r);
        g.mul(&w).scale(Complex64::new(self.amplitude, 0.0))
    }

    /// Admissibility constant, computed once with the environment's quadrature settings.
    pub fn admissibility(&self) -> Result<f64> {
        if let Some(&a) = self.admissibility.get() {
            return Ok(a);
        }
        let a = admissibility_with(self, &QuadConfig::from_env())?;
        let _ = self.admissibility.set(a);
        Ok(a)
    }

    /// Whether the admissibility constant has been computed.
    pub fn admissibility_cached(&self) -> Option<f64> {
        self.admissibility.get().copied()
    }
}

impl AxialFunction for WaveletDescriptor {
    fn dim(&self) -> usize {
        self.params.m
    }

    fn profiles(&self, r: f64) -> (Complex64, Complex64) {
        let v = self.eval_radius(r);
        (v.scalar, v.radial)
    }

    fn decay(&self) -> f64 {
        -(self.order as f64 + self.params.alpha + self.params.beta)
    }
}

/// `ψ(x)` as the product of the polynomial and weight values.
pub fn mother_eval(wd: &WaveletDescriptor, x: &Vector) -> AxialValue {
    let g = axial_eval(&wd.jacobi.poly, x);
    let w = crate::axial::weight_eval(&wd.params, x);
    g.mul(&w).scale(Complex64::new(wd.amplitude, 0.0))
}

fn check_geometry(wd: &WaveletDescriptor, geo: &GridGeometry) -> Result<()> {
    if geo.dim() != wd.dim() {
        return Err(Error::DimensionMismatch { left: geo.dim(), right: wd.dim() });
    }
    Ok(())
}

fn warn_resolution(geo: &GridGeometry, a: f64) {
    let h = geo.spacing.iter().cloned().fold(0.0, f64::max);
    if h > a / 4.0 {
        log::warn!("scale a = {a} is under-resolved by grid spacing {h} (h > a/4)");
    }
}

/// Samples `ψ^a_b` on the grid: scalar channel and the `m` vector channels.
pub fn rasterize(wd: &WaveletDescriptor, geo: &GridGeometry, a: f64, b: &[f64]) -> Result<GridField> {
    check_geometry(wd, geo)?;
    if b.len() != wd.dim() {
        return Err(Error::DimensionMismatch { left: b.len(), right: wd.dim() });
    }
    if !(a > 0.0) {
        return Err(precondition("a > 0", format!("got a = {a}")));
    }
    warn_resolution(geo, a);
    let m = wd.dim();
    let norm = a.powf(-(m as f64) / 2.0);
    let n = geo.len();
    let mut chans = vec![vec![ZERO; n]; m + 1];
    for i in 0..n {
        let x = geo.position(i);
        let y: Vec<f64> = x.0.iter().zip(b).map(|(xi, bi)| (xi - bi) / a).collect();
        let r = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        let v = wd.eval_radius(r);
        chans[0][i] = v.scalar * norm;
        if r > 0.0 {
            for j in 0..m {
                chans[j + 1][i] = v.radial * (norm * y[j] / r);
            }
        }
    }
    let mut field = GridField::empty(geo.clone());
    for (k, data) in chans.into_iter().enumerate() {
        field.set_channel(k, data)?;
    }
    Ok(field)
}

/// `h^m ψ_a(d)` on wrapped grid offsets `d`, channels `0..=m`.
fn wrapped_kernel(wd: &WaveletDescriptor, geo: &GridGeometry, a: f64) -> Vec<Vec<Complex64>> {
    let m = wd.dim();
    let n = geo.len();
    let scale = a.powf(-(m as f64) / 2.0) * geo.cell_volume();
    let mut chans = vec![vec![ZERO; n]; m + 1];
    for i in 0..n {
        let idx = geo.unravel(i);
        let y: Vec<f64> = idx
            .iter()
            .enumerate()
            .map(|(j, &k)| signed_index(k, geo.shape[j]) as f64 * geo.spacing[j] / a)
            .collect();
        let r = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        let v = wd.eval_radius(r);
        chans[0][i] = v.scalar * scale;
        if r > 0.0 {
            for j in 0..m {
                chans[j + 1][i] = v.radial * (scale * y[j] / r);
            }
        }
    }
    chans
}

/// Trapezoid weights in `ln a` for the given scales.
pub fn log_trapezoid_weights(scales: &[f64]) -> Vec<f64> {
    let s = scales.len();
    if s == 1 {
        return vec![1.0];
    }
    let t: Vec<f64> = scales.iter().map(|a| a.ln()).collect();
    (0..s)
        .map(|i| {
            let lo = if i == 0 { t[0] } else { t[i - 1] };
            let hi = if i + 1 == s { t[s - 1] } else { t[i + 1] };
            0.5 * (hi - lo)
        })
        .collect()
}

/// `count` log-uniform scales from `amin` to `amax` inclusive.
pub fn log_scales(amin: f64, amax: f64, count: usize) -> Result<Vec<f64>> {
    if !(amin > 0.0 && amax > amin) || count < 2 {
        return Err(precondition("scales", "need 0 < amin < amax and at least two scales"));
    }
    let (l0, l1) = (amin.ln(), amax.ln());
    Ok((0..count)
        .map(|k| (l0 + (l1 - l0) * k as f64 / (count - 1) as f64).exp())
        .collect())
}

fn check_scales(scales: &[f64]) -> Result<()> {
    if scales.is_empty() {
        return Err(precondition("scales", "at least one scale is required"));
    }
    if scales.iter().any(|&a| !(a > 0.0 && a.is_finite())) {
        return Err(precondition("scales", "scales must be positive and finite"));
    }
    if scales.windows(2).any(|w| w[1] <= w[0]) {
        return Err(precondition("scales", "scales must be strictly increasing"));
    }
    Ok(())
}

/// `∫_0^∞ (|S(ρ)|² + |V(ρ)|²) dρ/ρ`, trapezoid in `ln ρ`.
pub fn admissibility_with(wd: &WaveletDescriptor, cfg: &QuadConfig) -> Result<f64> {
    const BATCH: usize = 32;
    let dt = 20.0 / cfg.spectrum_nodes as f64;
    let t_lo = (1e-6f64).ln();
    let t_cap = (1e4f64).ln();
    let integrand = |t: f64| {
        let (s, v) = axial_spectrum_at(wd, t.exp(), cfg);
        s.norm_sqr() + v.norm_sqr()
    };
    let mut values: Vec<f64> = Vec::new();
    let mut peak: f64 = 0.0;
    let mut quiet = 0;
    let mut k = 0usize;
    loop {
        let batch: Vec<f64> = (k..k + BATCH)
            .into_par_iter()
            .map(|j| integrand(t_lo + j as f64 * dt))
            .collect();
        k += BATCH;
        for v in batch {
            if !v.is_finite() {
                return Err(Error::Divergent("in the spectrum: non-finite spectral density"));
            }
            peak = peak.max(v);
            values.push(v);
            if peak > 0.0 && v < 1e-15 * peak && values.len() > 1 && values[values.len() - 2] >= v {
                quiet += 1;
            } else {
                quiet = 0;
            }
        }
        if quiet >= 8 {
            break;
        }
        if t_lo + k as f64 * dt > t_cap {
            return Err(Error::Divergent("at ρ → ∞: spectrum does not decay"));
        }
    }
    if peak == 0.0 {
        return Ok(0.0);
    }
    if values[0] > 1e-8 * peak {
        return Err(Error::Divergent("at ρ → 0: the wavelet has nonzero mean"));
    }
    let n = values.len();
    let sum: f64 = values.iter().sum::<f64>() - 0.5 * (values[0] + values[n - 1]);
    Ok(sum * dt)
}

pub fn admissibility(wd: &WaveletDescriptor) -> Result<f64> {
    wd.admissibility()
}

/// Per-scale coefficients of a forward transform.
#[derive(Clone, Debug)]
pub struct CwtResult {
    pub scales: Vec<f64>,
    /// Channel 0 is the scalar part, channels `1..=m` the `e_j` parts.
    pub coefficients: Vec<GridField>,
    pub wavelet: WaveletDescriptor,
    pub geometry: GridGeometry,
}

impl CwtResult {
    /// `Σ_b |C(a,b)|² h^m` per scale.
    pub fn energies(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.l2_norm().powi(2)).collect()
    }

    /// `max_b |C(a,b)|` per scale, with `|C|` the multivector norm.
    pub fn max_magnitudes(&self) -> Vec<f64> {
        self.coefficients
            .iter()
            .map(|c| {
                let n = c.geometry().len();
                (0..n)
                    .map(|i| c.channels().map(|(_, d)| d[i].norm_sqr()).sum::<f64>().sqrt())
                    .fold(0.0, f64::max)
            })
            .collect()
    }
}

pub fn cwt_forward(f: &GridField, wd: &WaveletDescriptor, scales: &[f64]) -> Result<CwtResult> {
    check_geometry(wd, f.geometry())?;
    check_scales(scales)?;
    let geo = f.geometry().clone();
    let plan = NdFft::new(&geo.shape);
    let mut fbar: Vec<Complex64> = f.scalar_samples()?.iter().map(|c| c.conj()).collect();
    plan.forward(&mut fbar);
    let m = wd.dim();
    let coefficients = scales
        .par_iter()
        .map(|&a| {
            warn_resolution(&geo, a);
            let kernel = wrapped_kernel(wd, &geo, a);
            let mut field = GridField::empty(geo.clone());
            for (c, mut k) in kernel.into_iter().enumerate() {
                // correlation uses ψ_a(-d): the vector channels are odd
                if c > 0 {
                    for v in k.iter_mut() {
                        *v = -*v;
                    }
                }
                plan.forward(&mut k);
                for (kv, fv) in k.iter_mut().zip(&fbar) {
                    *kv *= fv;
                }
                plan.inverse(&mut k);
                field.set_channel(c, k)?;
            }
            debug_assert_eq!(field.channel_indices().len(), m + 1);
            Ok(field)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CwtResult { scales: scales.to_vec(), coefficients, wavelet: wd.clone(), geometry: geo })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParsevalReport {
    /// `(1/A) Σ_a w_a a^{-m} Σ_b <C_{a,b}(f), C_{a,b}(g)> h^m`.
    pub lhs: Complex64,
    /// `∫ g conj(f) dV`, the limit of the left side (equal to `<f, g>` for real fields).
    pub rhs: Complex64,
    /// `|lhs - rhs| / (‖f‖ ‖g‖)`.
    pub gap: f64,
}

pub fn parseval_check(f: &GridField, g: &GridField, wd: &WaveletDescriptor, scales: &[f64]) -> Result<ParsevalReport> {
    if f.geometry() != g.geometry() {
        return Err(precondition("congruent grids", "f and g must share one grid geometry"));
    }
    check_scales(scales)?;
    if scales[scales.len() - 1] / scales[0] < 1e3 {
        log::warn!("Parseval check: scales cover fewer than three decades");
    }
    let cf = cwt_forward(f, wd, scales)?;
    let cg = cwt_forward(g, wd, scales)?;
    let a_const = wd.admissibility()?;
    let weights = log_trapezoid_weights(scales);
    let m = wd.dim() as f64;
    let dv = f.geometry().cell_volume();
    let mut lhs = ZERO;
    for (i, &a) in scales.iter().enumerate() {
        let mut inner = ZERO;
        for (c, df) in cf.coefficients[i].channels() {
            if let Some(dg) = cg.coefficients[i].channel(c) {
                inner += df.iter().zip(dg).map(|(x, y)| x * y.conj()).sum::<Complex64>();
            }
        }
        lhs += inner * (weights[i] * a.powf(-m) * dv);
    }
    lhs /= a_const;
    let fs = f.scalar_samples()?;
    let gs = g.scalar_samples()?;
    let rhs: Complex64 = gs.iter().zip(&fs).map(|(x, y)| x * y.conj()).sum::<Complex64>() * dv;
    let scale = f.l2_norm() * g.l2_norm();
    let diff = (lhs - rhs).norm();
    let gap = if scale > 0.0 { diff / scale } else if diff == 0.0 { 0.0 } else { f64::INFINITY };
    Ok(ParsevalReport { lhs, rhs, gap })
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    /// Scalar part of the discretized inversion integral.
    pub field: GridField,
    /// `‖non-scalar part‖ / ‖scalar part‖` of the same integral.
    pub residual: f64,
}

/// Discretized inversion `f ≈ (1/A) Σ_a w_a a^{-m} Σ_b ψ^a_b · conj~(C(a,b)) h^m`, scalar part.
///
/// `conj~` is Clifford conjugation with complex conjugation, which makes the scalar part of
/// `ψ conj~(ψ)` equal to `|ψ_0|² + Σ|ψ_j|²`.
pub fn reconstruct(cw: &CwtResult, wd: &WaveletDescriptor) -> Result<Reconstruction> {
    check_geometry(wd, &cw.geometry)?;
    check_scales(&cw.scales)?;
    if cw.coefficients.len() != cw.scales.len() {
        return Err(Error::DimensionMismatch { left: cw.coefficients.len(), right: cw.scales.len() });
    }
    let a_const = wd.admissibility()?;
    let geo = &cw.geometry;
    let m = wd.dim();
    let n = geo.len();
    let plan = NdFft::new(&geo.shape);
    let weights = log_trapezoid_weights(&cw.scales);
    let pairs: Vec<(usize, usize)> = (1..=m).flat_map(|j| (j + 1..=m).map(move |k| (j, k))).collect();
    let contributions = cw
        .scales
        .par_iter()
        .enumerate()
        .map(|(i, &a)| {
            let mut kernel = wrapped_kernel(wd, geo, a);
            for k in kernel.iter_mut() {
                plan.forward(k);
            }
            let coeff = &cw.coefficients[i];
            let mut dual: Vec<Vec<Complex64>> = (0..=m)
                .map(|c| {
                    let sign = if c == 0 { 1.0 } else { -1.0 };
                    let mut d: Vec<Complex64> = match coeff.channel(c) {
                        Some(data) => data.iter().map(|v| v.conj() * sign).collect(),
                        None => vec![ZERO; n],
                    };
                    plan.forward(&mut d);
                    d
                })
                .collect();
            let w = weights[i] * a.powf(-(m as f64)) / a_const;
            // grades 0, 1 and 2 of ψ * D in the Fourier domain
            let mut out = vec![vec![ZERO; n]; 1 + m + pairs.len()];
            for p in 0..n {
                let mut s = kernel[0][p] * dual[0][p];
                for j in 1..=m {
                    s -= kernel[j][p] * dual[j][p];
                }
                out[0][p] = s * w;
                for j in 1..=m {
                    out[j][p] = (kernel[0][p] * dual[j][p] + kernel[j][p] * dual[0][p]) * w;
                }
                for (q, &(j, k)) in pairs.iter().enumerate() {
                    out[1 + m + q][p] = (kernel[j][p] * dual[k][p] - kernel[k][p] * dual[j][p]) * w;
                }
            }
            dual.clear();
            out
        })
        .collect::<Vec<_>>();
    let mut total = vec![vec![ZERO; n]; 1 + m + pairs.len()];
    for contrib in contributions {
        for (acc, c) in total.iter_mut().zip(contrib) {
            for (x, y) in acc.iter_mut().zip(c) {
                *x += y;
            }
        }
    }
    for chan in total.iter_mut() {
        plan.inverse(chan);
    }
    let scalar = total.remove(0);
    let dv = geo.cell_volume();
    let scalar_norm = (scalar.iter().map(|c| c.norm_sqr()).sum::<f64>() * dv).sqrt();
    let rest_norm = (total.iter().flat_map(|c| c.iter()).map(|c| c.norm_sqr()).sum::<f64>() * dv).sqrt();
    let residual = if scalar_norm > 0.0 { rest_norm / scalar_norm } else { 0.0 };
    let mut field = GridField::empty(geo.clone());
    field.set_channel(0, scalar)?;
    Ok(Reconstruction { field, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_preconditions() {
        assert!(WaveletDescriptor::new(1, -4.0, -4.0, 2).is_ok());
        assert!(WaveletDescriptor::new(0, -4.0, -4.0, 2).is_err());
        assert!(WaveletDescriptor::new(1, -1.0, -1.0, 2).is_err());
        // 2ℓ + α + β + m = 1 violates the moment condition
        assert!(WaveletDescriptor::new(3, -4.0, -3.0, 2).is_err());
    }

    #[test]
    fn mother_at_origin_is_constant_coefficient() {
        let wd = WaveletDescriptor::new(2, -6.0, -5.0, 3).unwrap();
        let v = mother_eval(&wd, &Vector(vec![0.0; 3]));
        assert_eq!(v.scalar, wd.jacobi().poly.coeff(0));
        assert_eq!(v.radial, ZERO);
    }

    #[test]
    fn pair_and_direct_evaluation_agree() {
        let wd = WaveletDescriptor::new(3, -7.0, -5.5, 2).unwrap();
        for x in [vec![0.3, -0.1], vec![1.5, 2.0], vec![-4.0, 0.5]] {
            let x = Vector(x);
            let a = mother_eval(&wd, &x);
            let b = wd.eval_radius(x.norm());
            assert!((a.scalar - b.scalar).norm() <= 1e-12 * (1.0 + a.norm()));
            assert!((a.radial - b.radial).norm() <= 1e-12 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn trapezoid_weights() {
        let s = log_scales(1.0, 100.0, 3).unwrap();
        let w = log_trapezoid_weights(&s);
        let l = 100f64.ln();
        assert!((w[0] - l / 4.0).abs() < 1e-14 && (w[1] - l / 2.0).abs() < 1e-14 && (w[2] - l / 4.0).abs() < 1e-14);
    }

    #[test]
    fn zero_input_gives_zero_output() {
        let wd = WaveletDescriptor::new(1, -4.0, -4.0, 2).unwrap();
        let geo = GridGeometry::cube(2, 16, -4.0, 4.0).unwrap();
        let f = GridField::from_scalar_fn(geo, |_| ZERO);
        let cw = cwt_forward(&f, &wd, &[1.0, 2.0]).unwrap();
        assert!(cw.energies().iter().all(|&e| e == 0.0));
    }

    #[test]
    fn rejects_vector_input() {
        let wd = WaveletDescriptor::new(1, -4.0, -4.0, 2).unwrap();
        let geo = GridGeometry::cube(2, 8, -4.0, 4.0).unwrap();
        let mut f = GridField::from_scalar_fn(geo.clone(), |_| Complex64::new(1.0, 0.0));
        f.set_channel(2, vec![Complex64::new(1.0, 0.0); 64]).unwrap();
        assert!(matches!(cwt_forward(&f, &wd, &[1.0]), Err(Error::NonScalarField(2))));
    }
}
