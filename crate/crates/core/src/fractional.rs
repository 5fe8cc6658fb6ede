//! One-dimensional fractional calculus and the Hermite-basis fractional Fourier transform.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use puruspe::gamma;

use crate::error::{precondition, Error, Result};
use crate::quad::{gauss_jacobi, gauss_legendre};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real function of one variable, optionally with known derivatives `f', f'', ..`.
#[derive(Clone)]
pub struct Func1D {
    f: RealFn,
    derivatives: Vec<RealFn>,
}

impl std::fmt::Debug for Func1D {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt.debug_struct("Func1D").field("known_derivatives", &self.derivatives.len()).finish()
    }
}

impl Func1D {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Func1D { f: Arc::new(f), derivatives: vec![] }
    }

    /// Appends the next analytic derivative.
    pub fn with_derivative(mut self, df: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.derivatives.push(Arc::new(df));
        self
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    /// `f^{(n)}(t)`, analytic if supplied, otherwise by extrapolated central differences.
    pub fn derivative(&self, n: usize, t: f64) -> f64 {
        if n == 0 {
            return self.eval(t);
        }
        if let Some(d) = self.derivatives.get(n - 1) {
            return d(t);
        }
        let h = 0.05 * t.abs().max(1.0);
        richardson_derivative(&*self.f, n, t, h)
    }
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Central difference `δ_h^n g(t) / h^n`.
fn central_difference(g: &dyn Fn(f64) -> f64, n: usize, t: f64, h: f64) -> f64 {
    let half = n as f64 / 2.0;
    // the weights sum to zero, so offsetting by g(t) changes nothing but the rounding
    let centre = g(t);
    let mut acc = 0.0;
    for j in 0..=n {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binom(n, j) * (g(t + (half - j as f64) * h) - centre);
    }
    acc / h.powi(n as i32)
}

/// `g^{(n)}(t)` by a Neville tableau in `h²` over halved steps, keeping the most stable entry.
pub fn richardson_derivative(g: &dyn Fn(f64) -> f64, n: usize, t: f64, h0: f64) -> f64 {
    const LEVELS: usize = 8;
    let mut table = vec![vec![0.0; LEVELS]; LEVELS];
    let mut best = f64::NAN;
    let mut best_err = f64::INFINITY;
    let mut h = h0;
    for i in 0..LEVELS {
        table[i][0] = central_difference(g, n, t, h);
        let mut fac = 1.0;
        for j in 1..=i {
            fac *= 4.0;
            table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (fac - 1.0);
            let err = (table[i][j] - table[i][j - 1]).abs().max((table[i][j] - table[i - 1][j - 1]).abs());
            if err <= best_err {
                best_err = err;
                best = table[i][j];
            }
        }
        if i > 0 && (table[i][i] - table[i - 1][i - 1]).abs() >= 2.0 * best_err {
            break;
        }
        h *= 0.5;
    }
    if best.is_nan() {
        table[0][0]
    } else {
        best
    }
}

/// `∫_0^S s^p g(s) ds` for `p > -1`; `g` smooth near `0`, possibly singular at `S`.
fn weakly_singular(p: f64, span: f64, g: &dyn Fn(f64) -> f64, nodes: usize) -> f64 {
    const RATIO: f64 = 0.2;
    const PANELS: usize = 24;
    let half = 0.5 * span;
    let gj = gauss_jacobi(nodes, 0.0, p);
    let c = 0.5 * half;
    let mut left = 0.0;
    for (x, w) in gj.nodes.iter().zip(&gj.weights) {
        left += w * g(c * (1.0 + x));
    }
    left *= c.powf(p + 1.0);
    // geometrically graded panels toward s = S, in the distance u = S - s
    let gl = gauss_legendre(16);
    let h = |u: f64| {
        let s = span - u;
        s.powf(p) * g(s)
    };
    let mut right = 0.0;
    let mut hi = half;
    for _ in 0..PANELS {
        let lo = hi * RATIO;
        right += gl.integrate(lo, hi, &h);
        hi = lo;
    }
    right += gl.integrate(0.0, hi, &h);
    left + right
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegralKind {
    RiemannLiouville,
    Hadamard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativeKind {
    RiemannLiouville,
    Caputo,
}

fn check_interval(alpha: f64, a: f64, t: f64) -> Result<()> {
    if !(alpha > 0.0) {
        return Err(precondition("α > 0", format!("got α = {alpha}")));
    }
    if !(t > a) {
        return Err(precondition("t > a", format!("got a = {a}, t = {t}")));
    }
    Ok(())
}

/// Default Gauss-Jacobi node count.
pub const JACOBI_NODES: usize = 64;

pub fn fractional_integral(f: &Func1D, alpha: f64, a: f64, t: f64, kind: IntegralKind) -> Result<f64> {
    fractional_integral_with(f, alpha, a, t, kind, JACOBI_NODES)
}

pub fn fractional_integral_with(f: &Func1D, alpha: f64, a: f64, t: f64, kind: IntegralKind, nodes: usize) -> Result<f64> {
    check_interval(alpha, a, t)?;
    let raw = match kind {
        IntegralKind::RiemannLiouville => weakly_singular(alpha - 1.0, t - a, &|s| f.eval(t - s), nodes),
        IntegralKind::Hadamard => {
            if !(a > 0.0) {
                return Err(precondition("a > 0", format!("Hadamard integral needs a > 0, got {a}")));
            }
            weakly_singular(alpha - 1.0, (t / a).ln(), &|u| f.eval(t * (-u).exp()), nodes)
        }
    };
    Ok(raw / gamma(alpha))
}

fn is_integer(x: f64) -> bool {
    x == x.round()
}

pub fn fractional_derivative(f: &Func1D, alpha: f64, a: f64, t: f64, kind: DerivativeKind) -> Result<f64> {
    check_interval(alpha, a, t)?;
    let n = alpha.ceil() as usize;
    if is_integer(alpha) {
        return Ok(f.derivative(n, t));
    }
    let rest = n as f64 - alpha;
    match kind {
        DerivativeKind::Caputo => {
            let raw = weakly_singular(rest - 1.0, t - a, &|s| f.derivative(n, t - s), JACOBI_NODES);
            Ok(raw / gamma(rest))
        }
        DerivativeKind::RiemannLiouville => {
            let g = |s: f64| {
                fractional_integral(f, rest, a, s, IntegralKind::RiemannLiouville).unwrap_or(f64::NAN)
            };
            let h0 = (t - a) / (2.0 * (n as f64 + 1.0));
            Ok(richardson_derivative(&g, n, t, h0))
        }
    }
}

/// Standard power rule against numerical differentiation, plus a rescaled variant of it.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerRuleReport {
    pub p: f64,
    pub q: f64,
    pub t: f64,
    /// `Γ(p)/Γ(p-q) t^{p-q-1}`.
    pub standard: f64,
    /// Riemann-Liouville derivative of `t^{p-1}` from `a = 0`, computed numerically.
    pub numeric: f64,
    pub discrepancy: f64,
    /// The variant carrying the extra factors `e^{iqπ} m^q`.
    pub scaled_variant: Complex64,
    /// `|scaled_variant - standard|`.
    pub variant_discrepancy: f64,
}

pub fn power_rule_check(p: f64, q: f64, t: f64, m: usize) -> Result<PowerRuleReport> {
    if !(t > 0.0) {
        return Err(precondition("t > 0", format!("got t = {t}")));
    }
    if q < 0.0 {
        return Err(precondition("q ≥ 0", format!("got q = {q}")));
    }
    let rgamma = |x: f64| if x <= 0.0 && is_integer(x) { 0.0 } else { 1.0 / gamma(x) };
    let standard = gamma(p) * rgamma(p - q) * t.powf(p - q - 1.0);
    let f = Func1D::new(move |s| s.powf(p - 1.0));
    let numeric = if q == 0.0 {
        f.eval(t)
    } else {
        fractional_derivative(&f, q, 0.0, t, DerivativeKind::RiemannLiouville)?
    };
    let scaled_variant = Complex64::from_polar((m as f64).powf(q), q * std::f64::consts::PI) * standard;
    Ok(PowerRuleReport {
        p,
        q,
        t,
        standard,
        numeric,
        discrepancy: (standard - numeric).abs(),
        scaled_variant,
        variant_discrepancy: (scaled_variant - standard).norm(),
    })
}

/// Orthonormal Hermite functions `h_0..h_N` sampled on a uniform grid.
#[derive(Clone, Debug)]
pub struct HermiteBasis {
    pub max_order: usize,
    pub grid: Vec<f64>,
    pub dx: f64,
    /// `values[n][k] = h_n(grid[k])`.
    pub values: Vec<Vec<f64>>,
}

/// `h_0(x)..h_N(x)` by the normalized three-term recurrence.
pub fn hermite_functions(max_order: usize, x: f64) -> Vec<f64> {
    let mut h = Vec::with_capacity(max_order + 1);
    h.push(std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp());
    if max_order >= 1 {
        h.push(std::f64::consts::SQRT_2 * x * h[0]);
    }
    for n in 1..max_order {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * x * h[n] - (nf / (nf + 1.0)).sqrt() * h[n - 1];
        h.push(next);
    }
    h
}

type BasisKey = (usize, u64, u64, usize);

impl HermiteBasis {
    pub const DEFAULT_ORDER: usize = 48;
    pub const DEFAULT_HALF_WIDTH: f64 = 12.0;
    pub const DEFAULT_POINTS: usize = 512;

    /// Basis on `points` equispaced samples of `[lo, hi]`, endpoints included.
    pub fn new(max_order: usize, lo: f64, hi: f64, points: usize) -> Result<Self> {
        if points < 2 || !(hi > lo) {
            return Err(precondition("grid", "need at least two points on a nonempty interval"));
        }
        let dx = (hi - lo) / (points - 1) as f64;
        let grid: Vec<f64> = (0..points).map(|k| lo + k as f64 * dx).collect();
        let mut values = vec![Vec::with_capacity(points); max_order + 1];
        for &x in &grid {
            for (n, v) in hermite_functions(max_order, x).into_iter().enumerate() {
                values[n].push(v);
            }
        }
        Ok(HermiteBasis { max_order, grid, dx, values })
    }

    /// Memoized shared instance.
    pub fn shared(max_order: usize, lo: f64, hi: f64, points: usize) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<BasisKey, Arc<HermiteBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let key = (max_order, lo.to_bits(), hi.to_bits(), points);
        if let Some(b) = cache.lock().unwrap().get(&key) {
            return Ok(b.clone());
        }
        let b = Arc::new(Self::new(max_order, lo, hi, points)?);
        cache.lock().unwrap().insert(key, b.clone());
        Ok(b)
    }

    pub fn default_shared() -> Arc<Self> {
        Self::shared(
            Self::DEFAULT_ORDER,
            -Self::DEFAULT_HALF_WIDTH,
            Self::DEFAULT_HALF_WIDTH,
            Self::DEFAULT_POINTS,
        )
        .expect("default grid is valid")
    }

    /// `max |G - I|` for the discrete Gram matrix.
    pub fn gram_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..=self.max_order {
            for j in 0..=i {
                let g: f64 = self.values[i].iter().zip(&self.values[j]).map(|(a, b)| a * b).sum::<f64>() * self.dx;
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }

    /// Coefficients `<f, h_n>` by the discrete inner product.
    pub fn project(&self, samples: &[Complex64]) -> Result<Vec<Complex64>> {
        if samples.len() != self.grid.len() {
            return Err(Error::DimensionMismatch { left: samples.len(), right: self.grid.len() });
        }
        Ok(self
            .values
            .iter()
            .map(|h| samples.iter().zip(h).map(|(f, v)| f * v).sum::<Complex64>() * self.dx)
            .collect())
    }

    pub fn synthesize(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.grid.len()];
        for (c, h) in coeffs.iter().zip(&self.values) {
            for (o, v) in out.iter_mut().zip(h) {
                *o += c * v;
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrftOutput {
    pub values: Vec<Complex64>,
    /// `‖f - P f‖ / ‖f‖` for the projection `P` onto the basis span.
    pub residual: f64,
    /// Set when the residual exceeds 10%.
    pub warning: bool,
}

/// Fractional Fourier transform of order `a` (`a = π/2` is the unitary Fourier transform).
pub fn frft(samples: &[Complex64], a: f64, basis: &HermiteBasis) -> Result<FrftOutput> {
    let coeffs = basis.project(samples)?;
    let proj = basis.synthesize(&coeffs);
    let norm: f64 = samples.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let err: f64 = samples.iter().zip(&proj).map(|(f, p)| (f - p).norm_sqr()).sum::<f64>().sqrt();
    let residual = if norm > 0.0 { err / norm } else { 0.0 };
    let rotated: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| c * Complex64::from_polar(1.0, -(n as f64) * a))
        .collect();
    let warning = residual > 0.1;
    if warning {
        log::warn!("fractional Fourier transform: projection residual {residual:.3} exceeds 10%");
    }
    Ok(FrftOutput { values: basis.synthesize(&rotated), residual, warning })
}
