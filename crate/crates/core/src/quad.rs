//! Gauss quadrature rules and node-count configuration.
//!
//! Rules are computed once per `(n, a, b)` and shared. Nodes come from the eigenvalues of the
//! Jacobi matrix, polished by Newton steps on the three-term recurrence; weights are the
//! reciprocal Christoffel function of the orthonormal polynomials at each node.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use puruspe::gamma;

/// Environment variable that overrides the default node counts.
pub const NODES_ENV: &str = "CJW_QUAD_NODES";

/// Node counts used by the integrators of this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadConfig {
    /// Nodes of the tangent-mapped Gauss-Legendre rule on the half line.
    pub radial_nodes: usize,
    /// Gauss-Legendre nodes per oscillation panel of a Hankel integral.
    pub panel_nodes: usize,
    /// Trapezoid nodes in log-frequency for admissibility integrals.
    pub spectrum_nodes: usize,
    /// Gauss-Jacobi nodes for weakly singular integrals.
    pub jacobi_nodes: usize,
    /// Nodes per angular dimension on the unit sphere.
    pub sphere_nodes: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            radial_nodes: 256,
            panel_nodes: 32,
            spectrum_nodes: 400,
            jacobi_nodes: 64,
            sphere_nodes: 32,
        }
    }
}

impl QuadConfig {
    /// Defaults, or counts scaled from `CJW_QUAD_NODES` (the radial node count) when set.
    pub fn from_env() -> Self {
        match std::env::var(NODES_ENV).ok().and_then(|s| s.trim().parse::<usize>().ok()) {
            Some(n) if n >= 8 => Self::with_radial_nodes(n),
            _ => Self::default(),
        }
    }

    /// All counts scaled proportionally so that `radial_nodes == n`.
    pub fn with_radial_nodes(n: usize) -> Self {
        let d = Self::default();
        let scale = |k: usize, min: usize| ((k * n) / d.radial_nodes).max(min);
        QuadConfig {
            radial_nodes: n,
            panel_nodes: scale(d.panel_nodes, 8),
            spectrum_nodes: scale(d.spectrum_nodes, 32),
            jacobi_nodes: scale(d.jacobi_nodes, 8),
            sphere_nodes: scale(d.sphere_nodes, 8),
        }
    }

    pub fn doubled(&self) -> Self {
        QuadConfig {
            radial_nodes: 2 * self.radial_nodes,
            panel_nodes: 2 * self.panel_nodes,
            spectrum_nodes: 2 * self.spectrum_nodes,
            jacobi_nodes: 2 * self.jacobi_nodes,
            sphere_nodes: 2 * self.sphere_nodes,
        }
    }
}

/// A Gauss rule on `[-1, 1]` for the weight `(1-x)^a (1+x)^b`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub a: f64,
    pub b: f64,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_lo^hi f` for a Legendre rule (`a = b = 0`).
    pub fn integrate<T, F>(&self, lo: f64, hi: f64, mut f: F) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
        F: FnMut(f64) -> T,
    {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = T::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x) * (w * half);
        }
        acc
    }
}

type RuleKey = (usize, u64, u64);

fn cache() -> &'static Mutex<HashMap<RuleKey, Arc<Rule>>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<Rule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss-Legendre rule with `n` nodes.
pub fn gauss_legendre(n: usize) -> Arc<Rule> {
    gauss_jacobi(n, 0.0, 0.0)
}

/// Gauss-Jacobi rule with `n` nodes for `(1-x)^a (1+x)^b`, `a, b > -1`.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Arc<Rule> {
    assert!(n >= 1, "quadrature rule needs at least one node");
    assert!(a > -1.0 && b > -1.0, "Jacobi exponents must exceed -1");
    let key = (n, a.to_bits(), b.to_bits());
    if let Some(r) = cache().lock().unwrap().get(&key) {
        return r.clone();
    }
    let rule = Arc::new(build_jacobi(n, a, b));
    cache().lock().unwrap().insert(key, rule.clone());
    rule
}

/// Recurrence coefficients of the monic Jacobi polynomials.
fn jacobi_matrix(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = a + b;
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n);
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let d = if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        };
        diag.push(d);
        if k + 1 < n {
            let j = kf + 1.0;
            let s = 2.0 * j + ab;
            let beta = if k == 0 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * j * (j + a) * (j + b) * (j + ab) / (s * s * (s + 1.0) * (s - 1.0))
            };
            off.push(beta.sqrt());
        }
    }
    (diag, off)
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL.
fn tridiagonal_eigenvalues(mut d: Vec<f64>, off: &[f64]) -> Vec<f64> {
    let n = d.len();
    let mut e = vec![0.0; n];
    e[..off.len()].copy_from_slice(off);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut early = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let bb = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * bb;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - bb;
            }
            if early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    d
}

/// `(P_n(z), P_{n-1}(z), P_n'(z))` for the Jacobi polynomials in standard normalization.
fn jacobi_eval(n: usize, a: f64, b: f64, z: f64) -> (f64, f64, f64) {
    let ab = a + b;
    let mut p1 = 0.5 * (a - b + (ab + 2.0) * z);
    let mut p2 = 1.0;
    let mut temp = 2.0 + ab;
    for j in 2..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        temp = 2.0 * jf + ab;
        let aa = 2.0 * jf * (jf + ab) * (temp - 2.0);
        let bb = (temp - 1.0) * (a * a - b * b + temp * (temp - 2.0) * z);
        let cc = 2.0 * (jf - 1.0 + a) * (jf - 1.0 + b) * temp;
        p1 = (bb * p2 - cc * p3) / aa;
    }
    if n == 1 {
        temp = 2.0 + ab;
    }
    let nf = n as f64;
    let pp = (nf * (a - b - temp * z) * p1 + 2.0 * (nf + a) * (nf + b) * p2) / (temp * (1.0 - z * z));
    (p1, p2, pp)
}

fn build_jacobi(n: usize, a: f64, b: f64) -> Rule {
    let (diag, off) = jacobi_matrix(n, a, b);
    let mut nodes = tridiagonal_eigenvalues(diag.clone(), &off);
    let ab = a + b;
    let mu0 = 2f64.powf(ab + 1.0) * gamma(a + 1.0) * gamma(b + 1.0) / gamma(ab + 2.0);
    let mut weights = Vec::with_capacity(n);
    for z in nodes.iter_mut() {
        if n > 1 {
            for _ in 0..4 {
                let (p, _, pp) = jacobi_eval(n, a, b, *z);
                let step = p / pp;
                *z -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
        }
        // Christoffel function of the orthonormal polynomials
        let (mut prev, mut cur) = (0.0, 1.0);
        let mut sum = 1.0;
        for k in 0..n - 1 {
            let back = if k == 0 { 0.0 } else { off[k - 1] };
            let next = ((*z - diag[k]) * cur - back * prev) / off[k];
            prev = cur;
            cur = next;
            sum += cur * cur;
        }
        weights.push(mu0 / sum);
    }
    Rule {
        nodes,
        weights,
        a,
        b,
    }
}

/// `∫_0^∞ f(r) dr` with the substitution `r = scale * tan(θ)` and an `n`-node Legendre rule.
pub fn half_line<T, F>(n: usize, scale: f64, mut f: F) -> T
where
    T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
    F: FnMut(f64) -> T,
{
    let rule = gauss_legendre(n);
    let quarter = std::f64::consts::FRAC_PI_4;
    let mut acc = T::default();
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let theta = quarter * (x + 1.0);
        let c = theta.cos();
        let r = scale * theta.tan();
        acc = acc + f(r) * (w * quarter * scale / (c * c));
    }
    acc
}

/// Nodes and weights of the tangent-mapped half-line rule.
pub fn half_line_nodes(n: usize, scale: f64) -> Vec<(f64, f64)> {
    let rule = gauss_legendre(n);
    let quarter = std::f64::consts::FRAC_PI_4;
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(x, w)| {
            let theta = quarter * (x + 1.0);
            let c = theta.cos();
            (scale * theta.tan(), w * quarter * scale / (c * c))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials() {
        for n in [1, 2, 5, 16, 64, 256] {
            let r = gauss_legendre(n);
            for k in 0..(2 * n).min(40) {
                let got: f64 = r.integrate(0.0, 1.0, |x| x.powi(k as i32));
                assert!((got - 1.0 / (k as f64 + 1.0)).abs() < 1e-13, "n={n} k={k} got {got}");
            }
        }
    }

    #[test]
    fn jacobi_weight_moments() {
        // ∫ (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
        for &(a, b) in &[(-0.5, 0.0), (0.3, -0.7), (2.5, 1.5), (-0.9, -0.9)] {
            for n in [1, 3, 17, 64] {
                let r = gauss_jacobi(n, a, b);
                let sum: f64 = r.weights.iter().sum();
                let exact = 2f64.powf(a + b + 1.0) * gamma(a + 1.0) * gamma(b + 1.0) / gamma(a + b + 2.0);
                assert!((sum - exact).abs() < 1e-12 * exact, "a={a} b={b} n={n}");
                // first moment ∫ x w = (b-a)/(a+b+2) * ∫ w
                let m1: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| x * w).sum();
                assert!((m1 - exact * (b - a) / (a + b + 2.0)).abs() < 1e-12 * exact);
            }
        }
    }

    #[test]
    fn half_line_gaussian() {
        let got: f64 = half_line(128, 1.0, |r| (-r * r).exp());
        assert!((got - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn env_scaling() {
        let c = QuadConfig::with_radial_nodes(512);
        assert_eq!(c, QuadConfig::default().doubled());
    }
}
