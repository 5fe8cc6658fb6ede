//! Generalized Clifford-Jacobi polynomials `G_{ℓ,m}^{α,β}`.
//!
//! Generated by the three-term recursion
//! `G_{ℓ+1} = -[α-β + (α+β-2ℓ)x] G_ℓ - (1-x²) ∂G_ℓ` from `G_0 = 1`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::axial::{axial_eval, weight_coeffs, AxialPolynomial, AxialValue, WeightParams};
use crate::clifford::Vector;
use crate::error::{precondition, Result};
use crate::quad::{half_line_nodes, QuadConfig};
use crate::spectral::{sphere_area, sphere_rule};

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiPolynomial {
    pub degree: usize,
    pub params: WeightParams,
    pub poly: AxialPolynomial,
}

impl JacobiPolynomial {
    /// True when the leading coefficient cancelled and the actual degree is below `ℓ`.
    pub fn degree_dropped(&self) -> bool {
        self.poly.degree() != Some(self.degree)
    }

    pub fn eval(&self, x: &Vector) -> AxialValue {
        axial_eval(&self.poly, x)
    }
}

/// Runs the recursion `ℓ` times.
pub fn generate(l: usize, w: &WeightParams) -> JacobiPolynomial {
    let m = w.m;
    let one_minus_x2 = AxialPolynomial::from_real(m, &[1.0, 0.0, -1.0]).expect("m validated");
    let mut g = AxialPolynomial::one(m).expect("m validated");
    for k in 0..l {
        let lin = AxialPolynomial::from_real(m, &[w.alpha - w.beta, w.alpha + w.beta - 2.0 * k as f64])
            .expect("m validated");
        let a = lin.mul(&g).expect("same dimension");
        let b = one_minus_x2.mul(&g.dirac()).expect("same dimension");
        g = a.add(&b).expect("same dimension").scale(Complex64::new(-1.0, 0.0));
    }
    JacobiPolynomial { degree: l, params: *w, poly: g }
}

/// A finite sum of terms `c x^p ω_{a,b}(x)` with real `c`, integer `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightExpr {
    m: usize,
    terms: BTreeMap<(i32, u64, u64), f64>,
}

impl WeightExpr {
    /// The single term `ω_{α,β}`.
    pub fn weight(w: &WeightParams) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, w.alpha.to_bits(), w.beta.to_bits()), 1.0);
        WeightExpr { m: w.m, terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, p: i32, a: f64, b: f64, c: f64) {
        if c != 0.0 {
            *self.terms.entry((p, a.to_bits(), b.to_bits())).or_insert(0.0) += c;
        }
    }

    /// Exact Dirac derivative, treating each term as an analytic function `F` of `x` with
    /// `∂F(x) = -F'(x) - (m-1)/(2x) [F(x) - F(-x)]`.
    pub fn dirac(&self) -> WeightExpr {
        let mut out = WeightExpr { m: self.m, terms: BTreeMap::new() };
        let half = 0.5 * (self.m as f64 - 1.0);
        for (&(p, ab, bb), &c) in &self.terms {
            let a = f64::from_bits(ab);
            let b = f64::from_bits(bb);
            out.push(p - 1, a, b, -c * p as f64);
            out.push(p, a - 1.0, b, c * a);
            out.push(p, a, b - 1.0, -c * b);
            out.push(p - 1, a, b, -c * half);
            let parity = if p.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            out.push(p - 1, b, a, c * half * parity);
        }
        out.terms.retain(|_, c| *c != 0.0);
        out
    }

    /// Value at radius `r > 0`.
    pub fn eval_radius(&self, r: f64) -> AxialValue {
        let z = Complex64::new(0.0, r);
        let mut plus = Complex64::new(0.0, 0.0);
        let mut minus = Complex64::new(0.0, 0.0);
        for (&(p, ab, bb), &c) in &self.terms {
            let a = f64::from_bits(ab);
            let b = f64::from_bits(bb);
            let (wp, wm) = crate::axial::weight_pair(a, b, r);
            plus += z.powi(p) * wp * c;
            minus += (-z).powi(p) * wm * c;
        }
        AxialValue::from_pair(r, plus, minus)
    }
}

/// Below this radius `∂^ℓ ω` is summed from the Taylor series: the `x^{-p}` terms of the
/// symbolic expression cancel there and lose about `r^{1-ℓ}` in relative accuracy.
pub const SERIES_RADIUS: f64 = 0.25;
const SERIES_TERMS: usize = 120;

/// `∂^ℓ ω_{α,β}` from the coefficient series, valid for `r < 1`.
pub fn weight_dirac_power_series(l: usize, w: &WeightParams, r: f64) -> AxialValue {
    let mut p = weight_coeffs(w, SERIES_TERMS);
    for _ in 0..l {
        p = p.dirac();
    }
    let (plus, minus) = p.eval_pair(r);
    AxialValue::from_pair(r, plus, minus)
}

fn dirac_power(l: usize, w: &WeightParams, expr: &WeightExpr, r: f64) -> AxialValue {
    if r < SERIES_RADIUS {
        weight_dirac_power_series(l, w, r)
    } else {
        expr.eval_radius(r)
    }
}

/// `(-1)^ℓ ω_{ℓ-α,ℓ-β} ∂^ℓ ω_{α,β}` at radius `r > 0`.
pub fn rodrigues_value(l: usize, w: &WeightParams, r: f64) -> AxialValue {
    let mut expr = WeightExpr::weight(w);
    for _ in 0..l {
        expr = expr.dirac();
    }
    let d = dirac_power(l, w, &expr, r);
    let lf = l as f64;
    let pre = crate::axial::weight_eval_radius(lf - w.alpha, lf - w.beta, r);
    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
    pre.mul(&d).scale(Complex64::new(sign, 0.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RodriguesReport {
    /// `max |G - R| / (1 + |G|)` over evaluated points.
    pub max_residual: f64,
    pub evaluated: usize,
    /// Indices of points skipped because the weight overflowed.
    pub skipped: Vec<usize>,
}

/// Compares the recursion output against the Rodrigues-type representation.
pub fn rodrigues_residual(l: usize, w: &WeightParams, points: &[Vector]) -> Result<RodriguesReport> {
    if l > 4 {
        return Err(precondition("ℓ ≤ 4", format!("got ℓ = {l}")));
    }
    let g = generate(l, w);
    let mut expr = WeightExpr::weight(w);
    for _ in 0..l {
        expr = expr.dirac();
    }
    let lf = l as f64;
    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
    let mut report = RodriguesReport { max_residual: 0.0, evaluated: 0, skipped: vec![] };
    for (i, x) in points.iter().enumerate() {
        let r = x.norm();
        let gv = g.eval(x);
        let rhs = if l == 0 {
            AxialValue::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), r)
        } else {
            let pre = crate::axial::weight_eval_radius(lf - w.alpha, lf - w.beta, r);
            pre.mul(&dirac_power(l, w, &expr, r)).scale(Complex64::new(sign, 0.0))
        };
        if !(rhs.norm().is_finite()) {
            report.skipped.push(i);
            continue;
        }
        let diff = AxialValue::new(gv.scalar - rhs.scalar, gv.radial - rhs.radial, r);
        let res = diff.norm() / (1.0 + gv.norm());
        report.max_residual = report.max_residual.max(res);
        report.evaluated += 1;
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentResult {
    /// Scalar part of the integral.
    pub scalar: Complex64,
    /// Magnitude of the vector part of the integral.
    pub vector: f64,
    /// `∫ |integrand| dV`, the natural scale for judging the two parts above.
    pub abs_integral: f64,
}

/// `∫ x^k G_{t,m}^{α+t,β+t}(x) ω_{α,β}(x) dV` over `R^m`.
pub fn moment_integral(k: usize, t: usize, w: &WeightParams, cfg: &QuadConfig) -> Result<MomentResult> {
    let m = w.m as f64;
    let decay = k as f64 + 2.0 * t as f64 + w.alpha + w.beta + m;
    if decay >= 0.0 {
        return Err(precondition(
            "k + 2t + α + β + m < 0",
            format!("k={k}, t={t}, α={}, β={}, m={} gives {decay}", w.alpha, w.beta, w.m),
        ));
    }
    let tf = t as f64;
    let shifted = WeightParams::new(w.alpha + tf, w.beta + tf, w.m)?;
    let g = generate(t, &shifted);
    let p = AxialPolynomial::monomial(w.m, k)?.mul(&g.poly)?;
    let mut scalar = Complex64::new(0.0, 0.0);
    let mut radial = Complex64::new(0.0, 0.0);
    let mut abs = 0.0;
    for (r, wt) in half_line_nodes(cfg.radial_nodes, 1.0) {
        let (pp, pm) = p.eval_pair(r);
        let (wp, wm) = crate::axial::weight_pair(w.alpha, w.beta, r);
        let v = AxialValue::from_pair(r, pp * wp, pm * wm);
        let jac = r.powf(m - 1.0) * wt;
        scalar += v.scalar * jac;
        radial += v.radial * jac;
        abs += v.norm() * jac;
    }
    // the radial part multiplies the unit vector, whose sphere average vanishes
    let rule = sphere_rule(w.m, cfg.sphere_nodes)?;
    let mut mean_u = vec![0.0; w.m];
    for (u, wt) in &rule {
        for (acc, c) in mean_u.iter_mut().zip(&u.0) {
            *acc += c * wt;
        }
    }
    let u_norm = mean_u.iter().map(|c| c * c).sum::<f64>().sqrt();
    let area = sphere_area(w.m);
    Ok(MomentResult {
        scalar: scalar * area,
        vector: radial.norm() * u_norm,
        abs_integral: abs * area,
    })
}
