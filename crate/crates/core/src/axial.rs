//! Axial functions: polynomials `Σ c_n x^n` in the vector variable and the weight
//! `ω_{α,β}(x) = (1-x)^α (1+x)^β`.
//!
//! On the span of `{1, x}` the algebra generated by `x` is commutative and `x/r` squares to
//! `-1`, so it is isomorphic to `C ⊕ C` via `F ↦ (F(ir), F(-ir))`. Evaluation and products of
//! axial values use that pair form.

use num_complex::Complex64;

use crate::clifford::{Multivector, Vector};
use crate::error::{precondition, Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// `Σ c_n x^n` with `x^2 = -|x|^2`; stored without trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct AxialPolynomial {
    dim: usize,
    coeffs: Vec<Complex64>,
}

impl AxialPolynomial {
    pub fn new(m: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::UnsupportedDimension(m));
        }
        let mut p = AxialPolynomial { dim: m, coeffs };
        p.normalize();
        Ok(p)
    }

    pub fn from_real(m: usize, coeffs: &[f64]) -> Result<Self> {
        Self::new(m, coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(m: usize) -> Result<Self> {
        Self::new(m, vec![])
    }

    pub fn one(m: usize) -> Result<Self> {
        Self::from_real(m, &[1.0])
    }

    /// `x^n`.
    pub fn monomial(m: usize, n: usize) -> Result<Self> {
        let mut c = vec![ZERO; n + 1];
        c[n] = Complex64::new(1.0, 0.0);
        Self::new(m, c)
    }

    fn normalize(&mut self) {
        while self.coeffs.len() > 1 && *self.coeffs.last().unwrap() == ZERO {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(ZERO);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficients `c_0..c_N`; the zero polynomial is `[0]`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == ZERO
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    fn check(&self, other: &AxialPolynomial) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::DimensionMismatch { left: self.dim, right: other.dim })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &AxialPolynomial) -> Result<AxialPolynomial> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::new(self.dim, c)
    }

    pub fn sub(&self, other: &AxialPolynomial) -> Result<AxialPolynomial> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> AxialPolynomial {
        let mut p = AxialPolynomial {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        };
        p.normalize();
        p
    }

    /// Product; powers of `x` commute, so this is a coefficient convolution.
    pub fn mul(&self, other: &AxialPolynomial) -> Result<AxialPolynomial> {
        axial_mul(self, other)
    }

    pub fn dirac(&self) -> AxialPolynomial {
        axial_dirac(self)
    }

    pub fn eval(&self, x: &Vector) -> AxialValue {
        axial_eval(self, x)
    }

    /// `(p(ir), p(-ir))`.
    pub fn eval_pair(&self, r: f64) -> (Complex64, Complex64) {
        let zp = Complex64::new(0.0, r);
        let zm = -zp;
        let mut hp = ZERO;
        let mut hm = ZERO;
        for &c in self.coeffs.iter().rev() {
            hp = hp * zp + c;
            hm = hm * zm + c;
        }
        (hp, hm)
    }

    /// CSV line `m,N,re0,im0,...,reN,imN`.
    pub fn to_csv_line(&self) -> String {
        let mut s = format!("{},{}", self.dim, self.coeffs.len() - 1);
        for c in &self.coeffs {
            s.push_str(&format!(",{:e},{:e}", c.re, c.im));
        }
        s
    }

    pub fn from_csv_line(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.trim().split(',').collect();
        let bad = |what: &str| Error::Format(format!("polynomial CSV: {what}"));
        if fields.len() < 2 {
            return Err(bad("missing header fields"));
        }
        let m: usize = fields[0].trim().parse().map_err(|_| bad("m"))?;
        let n: usize = fields[1].trim().parse().map_err(|_| bad("N"))?;
        if fields.len() != 2 + 2 * (n + 1) {
            return Err(bad("coefficient count does not match N"));
        }
        let vals: Vec<f64> = fields[2..]
            .iter()
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("coefficient"))?;
        Self::new(m, vals.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect())
    }
}

/// `γ_{n,m}` with `∂ x^n = γ_{n,m} x^{n-1}`.
pub fn gamma_coefficient(n: usize, m: usize) -> f64 {
    if n % 2 == 0 {
        -(n as f64)
    } else {
        -((m + n - 1) as f64)
    }
}

pub fn axial_mul(p: &AxialPolynomial, q: &AxialPolynomial) -> Result<AxialPolynomial> {
    p.check(q)?;
    let mut c = vec![ZERO; p.coeffs.len() + q.coeffs.len() - 1];
    for (i, &a) in p.coeffs.iter().enumerate() {
        for (j, &b) in q.coeffs.iter().enumerate() {
            c[i + j] += a * b;
        }
    }
    AxialPolynomial::new(p.dim, c)
}

/// Exact Dirac derivative by the power rule.
pub fn axial_dirac(p: &AxialPolynomial) -> AxialPolynomial {
    let c: Vec<Complex64> = p
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, &c)| c * gamma_coefficient(n, p.dim))
        .collect();
    AxialPolynomial::new(p.dim, c).expect("dimension already validated")
}

pub fn axial_eval(p: &AxialPolynomial, x: &Vector) -> AxialValue {
    let r = x.norm();
    // Horner in -r^2 for the even and odd parts separately
    let t = -r * r;
    let mut even = ZERO;
    let mut odd = ZERO;
    let top = p.coeffs.len();
    for n in (0..top).rev().filter(|n| n % 2 == 0) {
        even = even * t + p.coeffs[n];
    }
    for n in (0..top).rev().filter(|n| n % 2 == 1) {
        odd = odd * t + p.coeffs[n];
    }
    AxialValue { scalar: even, radial: odd * r, r }
}

/// An element `scalar + radial * x/r` of the span of `{1, x}` at radius `r`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxialValue {
    pub scalar: Complex64,
    pub radial: Complex64,
    pub r: f64,
}

impl AxialValue {
    pub fn new(scalar: Complex64, radial: Complex64, r: f64) -> Self {
        let radial = if r == 0.0 { ZERO } else { radial };
        AxialValue { scalar, radial, r }
    }

    pub fn zero(r: f64) -> Self {
        AxialValue { scalar: ZERO, radial: ZERO, r }
    }

    /// From the images `F(ir)`, `F(-ir)`.
    pub fn from_pair(r: f64, plus: Complex64, minus: Complex64) -> Self {
        Self::new((plus + minus) * 0.5, (plus - minus) / (2.0 * I), r)
    }

    /// `(F(ir), F(-ir))`.
    pub fn to_pair(&self) -> (Complex64, Complex64) {
        (self.scalar + I * self.radial, self.scalar - I * self.radial)
    }

    pub fn mul(&self, other: &AxialValue) -> AxialValue {
        AxialValue::new(
            self.scalar * other.scalar - self.radial * other.radial,
            self.scalar * other.radial + self.radial * other.scalar,
            self.r,
        )
    }

    pub fn add(&self, other: &AxialValue) -> AxialValue {
        AxialValue::new(self.scalar + other.scalar, self.radial + other.radial, self.r)
    }

    pub fn scale(&self, s: Complex64) -> AxialValue {
        AxialValue::new(self.scalar * s, self.radial * s, self.r)
    }

    /// Euclidean norm of the multivector `scalar + radial x/r`.
    pub fn norm(&self) -> f64 {
        (self.scalar.norm_sqr() + self.radial.norm_sqr()).sqrt()
    }

    /// The multivector at the point `x` (which must have `|x| = r`).
    pub fn to_multivector(&self, x: &Vector) -> Result<Multivector> {
        let mut mv = Multivector::scalar(x.dim(), self.scalar)?;
        if self.r > 0.0 {
            for (j, &xj) in x.0.iter().enumerate() {
                mv.coeffs_mut()[j + 1] = self.radial * (xj / self.r);
            }
        }
        Ok(mv)
    }
}

/// Exponents and dimension of the weight `ω_{α,β}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightParams {
    pub alpha: f64,
    pub beta: f64,
    pub m: usize,
}

impl WeightParams {
    pub fn new(alpha: f64, beta: f64, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::UnsupportedDimension(m));
        }
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(precondition("weight exponents", "α and β must be finite"));
        }
        Ok(WeightParams { alpha, beta, m })
    }

    pub fn swapped(&self) -> Self {
        WeightParams { alpha: self.beta, beta: self.alpha, m: self.m }
    }
}

/// Generalized binomial coefficient `s (s-1) .. (s-j+1) / j!`.
pub fn binomial(s: f64, j: usize) -> f64 {
    let mut b = 1.0;
    for i in 0..j {
        b *= (s - i as f64) / (i as f64 + 1.0);
    }
    b
}

/// Taylor coefficients `a_0..a_N` of `ω_{α,β}` in powers of `x`.
///
/// Equal to the convolution `a_n = Σ_k B(β,k) B(α,n-k) (-1)^{n-k}`, but computed from
/// `(1-x²) ω' = [(β-α) - (α+β)x] ω`, which gives
/// `(n+1) a_{n+1} = (β-α) a_n + (n-1-α-β) a_{n-1}`. The convolution alternates in sign and
/// loses up to eight digits by n = 30; the recurrence stays near machine precision.
pub fn weight_coeffs(w: &WeightParams, n: usize) -> AxialPolynomial {
    let (a, b) = (w.alpha, w.beta);
    let mut c = Vec::with_capacity(n + 1);
    c.push(1.0);
    if n >= 1 {
        c.push(b - a);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((b - a) * c[k] + (kf - 1.0 - a - b) * c[k - 1]) / (kf + 1.0);
        c.push(next);
    }
    let c = c.into_iter().map(|v| Complex64::new(v, 0.0)).collect();
    AxialPolynomial::new(w.m, c).expect("dimension validated by WeightParams")
}

/// `((1-ir)^α (1+ir)^β, (1+ir)^α (1-ir)^β)` on the principal branch.
pub fn weight_pair(alpha: f64, beta: f64, r: f64) -> (Complex64, Complex64) {
    let modulus = (0.5 * (alpha + beta) * (r * r).ln_1p()).exp();
    let phase = (beta - alpha) * r.atan();
    let plus = Complex64::from_polar(modulus, phase);
    (plus, plus.conj())
}

pub fn weight_eval(w: &WeightParams, x: &Vector) -> AxialValue {
    weight_eval_radius(w.alpha, w.beta, x.norm())
}

/// `ω_{α,β}` at any point of radius `r`.
pub fn weight_eval_radius(alpha: f64, beta: f64, r: f64) -> AxialValue {
    let modulus = (0.5 * (alpha + beta) * (r * r).ln_1p()).exp();
    let phase = (beta - alpha) * r.atan();
    AxialValue::new(
        Complex64::new(modulus * phase.cos(), 0.0),
        Complex64::new(modulus * phase.sin(), 0.0),
        r,
    )
}

/// `sin(φ)/r` with `φ = c * atan(r)`, stable as `r → 0`.
fn odd_over_r(c: f64, r: f64) -> f64 {
    let phi = c * r.atan();
    let sinc = if phi.abs() < 1e-8 { 1.0 - phi * phi / 6.0 } else { phi.sin() / phi };
    let atan_ratio = if r < 1e-4 {
        1.0 - r * r / 3.0 + r.powi(4) / 5.0
    } else {
        r.atan() / r
    };
    c * atan_ratio * sinc
}

pub fn weight_dirac(w: &WeightParams, x: &Vector) -> AxialValue {
    weight_dirac_radius(w, x.norm())
}

/// `∂ω_{α,β} = α ω_{α-1,β} - β ω_{α,β-1} - (m-1)/(2x) [ω(x) - ω(-x)]` at radius `r`.
pub fn weight_dirac_radius(w: &WeightParams, r: f64) -> AxialValue {
    let (a, b) = (w.alpha, w.beta);
    let left = weight_eval_radius(a - 1.0, b, r).scale(Complex64::new(a, 0.0));
    let right = weight_eval_radius(a, b - 1.0, r).scale(Complex64::new(-b, 0.0));
    // (1/x)(ω(x) - ω(-x)) = 2 ρ / r where ρ is the radial part of ω
    let modulus = (0.5 * (a + b) * (r * r).ln_1p()).exp();
    let bracket = modulus * odd_over_r(b - a, r);
    let mut v = left.add(&right);
    v.scalar -= Complex64::new((w.m as f64 - 1.0) * bracket, 0.0);
    v
}

/// `Σ_k (-x0)^k / k! ∂^k g` evaluated at `x`.
pub fn ck_extension(g: &AxialPolynomial, x0: f64, x: &Vector) -> AxialValue {
    let r = x.norm();
    let mut acc = AxialValue::zero(r);
    let mut term = g.clone();
    let mut factor = 1.0;
    let mut k = 0usize;
    loop {
        let v = axial_eval(&term, x).scale(Complex64::new(factor, 0.0));
        acc = acc.add(&v);
        if term.is_zero() {
            break;
        }
        term = term.dirac();
        k += 1;
        factor *= -x0 / k as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(p: &AxialPolynomial) -> Vec<f64> {
        p.coeffs().iter().map(|c| c.re).collect()
    }

    #[test]
    fn mul_examples() {
        let a = AxialPolynomial::from_real(2, &[1.0, 1.0]).unwrap();
        let b = AxialPolynomial::from_real(2, &[1.0, -1.0]).unwrap();
        assert_eq!(re(&axial_mul(&a, &b).unwrap()), vec![1.0, 0.0, -1.0]);
        let x = AxialPolynomial::monomial(2, 1).unwrap();
        assert_eq!(re(&axial_mul(&x, &x).unwrap()), vec![0.0, 0.0, 1.0]);
        let y = AxialPolynomial::monomial(3, 1).unwrap();
        assert!(matches!(axial_mul(&x, &y), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn dirac_examples() {
        for m in 1..6 {
            let x = AxialPolynomial::monomial(m, 1).unwrap();
            assert_eq!(re(&x.dirac()), vec![-(m as f64)]);
        }
        let x2 = AxialPolynomial::monomial(3, 2).unwrap();
        assert_eq!(re(&x2.dirac()), vec![0.0, -2.0]);
        assert!(AxialPolynomial::from_real(3, &[5.0]).unwrap().dirac().is_zero());
    }

    #[test]
    fn eval_examples() {
        let x = AxialPolynomial::monomial(2, 1).unwrap();
        let v = x.eval(&Vector(vec![1.0, 2.0]));
        assert_eq!(v.scalar, ZERO);
        assert!((v.radial.re - 5f64.sqrt()).abs() < 1e-15);
        let p = AxialPolynomial::from_real(2, &[1.0, 0.0, -1.0]).unwrap();
        let v = p.eval(&Vector(vec![0.6, 0.8]));
        assert!((v.scalar.re - 2.0).abs() < 1e-15 && v.radial == ZERO);
    }

    #[test]
    fn eval_pair_agrees_with_eval() {
        let p = AxialPolynomial::new(
            3,
            vec![Complex64::new(0.3, -1.0), Complex64::new(2.0, 0.5), Complex64::new(-1.0, 0.0), Complex64::new(0.25, 0.1)],
        )
        .unwrap();
        let x = Vector(vec![0.3, -0.4, 1.2]);
        let v = p.eval(&x);
        let (pp, pm) = p.eval_pair(x.norm());
        let w = AxialValue::from_pair(x.norm(), pp, pm);
        assert!((v.scalar - w.scalar).norm() < 1e-14 && (v.radial - w.radial).norm() < 1e-14);
    }

    #[test]
    fn weight_examples() {
        let w = WeightParams::new(-1.0, -1.0, 2).unwrap();
        let v = weight_eval_radius(w.alpha, w.beta, 1.0);
        assert!((v.scalar.re - 0.5).abs() < 1e-15 && v.radial.re.abs() < 1e-15);
        let v = weight_eval_radius(0.7, -3.1, 0.0);
        assert_eq!(v.scalar.re, 1.0);
        assert_eq!(v.radial, ZERO);
    }

    #[test]
    fn weight_dirac_examples() {
        for m in 1..5 {
            let w = WeightParams::new(1.0, 0.0, m).unwrap();
            for r in [0.0, 1e-9, 0.3, 2.0] {
                let v = weight_dirac_radius(&w, r);
                assert!((v.scalar.re - m as f64).abs() < 1e-12, "m={m} r={r} {v:?}");
                assert!(v.radial.norm() < 1e-12);
            }
            let w = WeightParams::new(1.0, 1.0, m).unwrap();
            let v = weight_dirac_radius(&w, 0.7);
            assert!(v.scalar.norm() < 1e-12 && (v.radial.re - 1.4).abs() < 1e-12);
            let w = WeightParams::new(0.0, 0.0, m).unwrap();
            assert!(weight_dirac_radius(&w, 0.7).norm() < 1e-15);
        }
    }

    #[test]
    fn ck_examples() {
        let m = 3;
        let x = Vector(vec![0.2, -0.5, 0.4]);
        let r = x.norm();
        let one = AxialPolynomial::one(m).unwrap();
        assert_eq!(ck_extension(&one, 0.7, &x).scalar.re, 1.0);
        let v = ck_extension(&AxialPolynomial::monomial(m, 1).unwrap(), 0.7, &x);
        assert!((v.scalar.re - 3.0 * 0.7).abs() < 1e-14 && (v.radial.re - r).abs() < 1e-14);
        let v = ck_extension(&AxialPolynomial::monomial(m, 2).unwrap(), 0.7, &x);
        assert!((v.scalar.re - (-r * r + 3.0 * 0.49)).abs() < 1e-14);
        assert!((v.radial.re - 2.0 * 0.7 * r).abs() < 1e-14);
    }

    #[test]
    fn csv_round_trip() {
        let p = AxialPolynomial::new(2, vec![Complex64::new(1.5, -0.25), Complex64::new(-3.0, 0.0)]).unwrap();
        let line = p.to_csv_line();
        assert_eq!(AxialPolynomial::from_csv_line(&line).unwrap(), p);
        assert!(AxialPolynomial::from_csv_line("2,3,1,0").is_err());
    }
}
