//! Dense multivectors over the complexified Clifford algebra with `e_j^2 = -1`.
//!
//! Coefficients are stored in canonical blade order: by grade, then lexicographically by
//! generator indices (`1, e1, .., em, e12, e13, ..`). Product signs are tabulated per dimension.

mod grid;
mod io;

pub use grid::{dirac_fd, GridField, GridGeometry};
pub use io::{payload_path, read_field, write_field, FieldHeader, DTYPE};

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported algebra dimension.
pub const MAX_DIM: usize = 8;

struct BladeTable {
    /// canonical index -> bitmask
    masks: Vec<u32>,
    /// bitmask -> canonical index
    index: Vec<usize>,
    /// `prod[i * n + j]` = (canonical index, sign) of `e_i e_j`
    prod: Vec<(u16, i8)>,
}

fn blade_sign(a: u32, b: u32) -> i8 {
    // swaps needed to sort the concatenated generator list
    let mut swaps = 0u32;
    let mut x = a >> 1;
    while x != 0 {
        swaps += (x & b).count_ones();
        x >>= 1;
    }
    swaps += (a & b).count_ones();
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

fn build_table(m: usize) -> BladeTable {
    let n = 1usize << m;
    let mut masks: Vec<u32> = (0..n as u32).collect();
    masks.sort_by_key(|&mask| {
        let mut gens = [0u8; MAX_DIM];
        let mut k = 0;
        for j in 0..m {
            if mask & (1 << j) != 0 {
                gens[k] = j as u8 + 1;
                k += 1;
            }
        }
        (mask.count_ones(), gens)
    });
    let mut index = vec![0; n];
    for (i, &mask) in masks.iter().enumerate() {
        index[mask as usize] = i;
    }
    let mut prod = Vec::with_capacity(n * n);
    for &a in &masks {
        for &b in &masks {
            prod.push((index[(a ^ b) as usize] as u16, blade_sign(a, b)));
        }
    }
    BladeTable { masks, index, prod }
}

fn table(m: usize) -> &'static BladeTable {
    static TABLES: [OnceLock<BladeTable>; MAX_DIM + 1] = [const { OnceLock::new() }; MAX_DIM + 1];
    TABLES[m].get_or_init(|| build_table(m))
}

fn check_dim(m: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&m) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(m))
    }
}

/// Bitmask (bit `j-1` for `e_j`) of the blade at canonical index `idx`.
pub fn blade_mask(m: usize, idx: usize) -> u32 {
    table(m).masks[idx]
}

/// Canonical index of the blade with bitmask `mask`.
pub fn blade_index_of_mask(m: usize, mask: u32) -> usize {
    table(m).index[mask as usize]
}

/// Grade of the blade at canonical index `idx`.
pub fn blade_grade(m: usize, idx: usize) -> usize {
    table(m).masks[idx].count_ones() as usize
}

/// Canonical index of `e_j` (`1 <= j <= m`).
pub fn vector_blade(j: usize) -> usize {
    j
}

/// Product `e_i e_j` of canonical blades as (canonical index, sign).
pub fn blade_product(m: usize, i: usize, j: usize) -> (usize, f64) {
    let n = 1 << m;
    let (k, s) = table(m).prod[i * n + j];
    (k as usize, s as f64)
}

/// Which anti-involution to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AntiInvolution {
    /// Clifford conjugation with complex conjugation of the coefficients.
    Conjugation,
    /// Reversion; complex-linear.
    Inversion,
}

/// A multivector in `C_m` with `2^m` complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector {
    dim: usize,
    coeffs: Vec<Complex64>,
}

impl Multivector {
    pub fn zero(m: usize) -> Result<Self> {
        check_dim(m)?;
        Ok(Multivector {
            dim: m,
            coeffs: vec![Complex64::new(0.0, 0.0); 1 << m],
        })
    }

    pub fn scalar(m: usize, c: Complex64) -> Result<Self> {
        let mut z = Self::zero(m)?;
        z.coeffs[0] = c;
        Ok(z)
    }

    pub fn from_coeffs(m: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        check_dim(m)?;
        if coeffs.len() != 1 << m {
            return Err(Error::DimensionMismatch {
                left: coeffs.len(),
                right: 1 << m,
            });
        }
        Ok(Multivector { dim: m, coeffs })
    }

    /// The product `e_{g1} e_{g2} ..` of 1-based generators, in the given order.
    pub fn blade(m: usize, generators: &[usize]) -> Result<Self> {
        let mut acc = Self::scalar(m, Complex64::new(1.0, 0.0))?;
        for &g in generators {
            if g == 0 || g > m {
                return Err(Error::Precondition {
                    name: "generator index",
                    detail: format!("e_{g} is not a generator of C_{m}"),
                });
            }
            let mut e = Self::zero(m)?;
            e.coeffs[vector_blade(g)] = Complex64::new(1.0, 0.0);
            acc = acc.geometric_product(&e)?;
        }
        Ok(acc)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn coeff(&self, idx: usize) -> Complex64 {
        self.coeffs[idx]
    }

    pub fn scalar_part(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn geometric_product(&self, other: &Multivector) -> Result<Multivector> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let n = self.coeffs.len();
        let t = table(self.dim);
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let row = &t.prod[i * n..(i + 1) * n];
            for (&b, &(k, s)) in other.coeffs.iter().zip(row) {
                out[k as usize] += a * b * s as f64;
            }
        }
        Ok(Multivector {
            dim: self.dim,
            coeffs: out,
        })
    }

    pub fn anti_involution(&self, kind: AntiInvolution) -> Multivector {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let k = blade_grade(self.dim, i);
                match kind {
                    AntiInvolution::Conjugation => {
                        let s = if (k * (k + 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                        c.conj() * s
                    }
                    AntiInvolution::Inversion => {
                        let s = if (k * k.saturating_sub(1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                        c * s
                    }
                }
            })
            .collect();
        Multivector { dim: self.dim, coeffs }
    }

    pub fn conjugate(&self) -> Multivector {
        self.anti_involution(AntiInvolution::Conjugation)
    }

    pub fn inversion(&self) -> Multivector {
        self.anti_involution(AntiInvolution::Inversion)
    }

    /// Projection onto grade `k`.
    pub fn grade(&self, k: usize) -> Multivector {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| if blade_grade(self.dim, i) == k { c } else { Complex64::new(0.0, 0.0) })
            .collect();
        Multivector { dim: self.dim, coeffs }
    }

    pub fn scale(&self, c: Complex64) -> Multivector {
        Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    fn zip_with(&self, other: &Multivector, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Multivector> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, other: &Multivector) -> Result<Multivector> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Multivector) -> Result<Multivector> {
        self.zip_with(other, |a, b| a - b)
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.try_add(rhs).expect("multivector dimensions differ")
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.try_sub(rhs).expect("multivector dimensions differ")
    }
}

impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.geometric_product(rhs).expect("multivector dimensions differ")
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// A real vector `x = Σ x_j e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector(pub Vec<f64>);

impl Vector {
    pub fn new(comps: Vec<f64>) -> Self {
        Vector(comps)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn to_multivector(&self) -> Result<Multivector> {
        let mut mv = Multivector::zero(self.dim())?;
        for (j, &x) in self.0.iter().enumerate() {
            mv.coeffs[vector_blade(j + 1)] = Complex64::new(x, 0.0);
        }
        Ok(mv)
    }
}

/// Split of the product `xy` into its scalar part `-x·y` and bivector part `x∧y`.
pub fn dot_wedge(x: &Vector, y: &Vector) -> Result<(f64, Multivector)> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    let prod = x.to_multivector()?.geometric_product(&y.to_multivector()?)?;
    Ok((-x.dot(y), prod.grade(2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn canonical_order_m3() {
        let masks: Vec<u32> = (0..8).map(|i| blade_mask(3, i)).collect();
        assert_eq!(masks, vec![0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]);
    }

    #[test]
    fn generators_square_to_minus_one() {
        for m in 1..=MAX_DIM {
            for j in 1..=m {
                let e = Multivector::blade(m, &[j]).unwrap();
                let sq = &e * &e;
                assert_eq!(sq, Multivector::scalar(m, c(-1.0)).unwrap());
            }
        }
    }

    #[test]
    fn e12_squared() {
        let e12 = Multivector::blade(2, &[1, 2]).unwrap();
        assert_eq!((&e12 * &e12).scalar_part(), c(-1.0));
        let e21 = Multivector::blade(2, &[2, 1]).unwrap();
        assert_eq!(e21, -&e12);
    }

    #[test]
    fn conjugation_signs() {
        let m = 3;
        let ones = Multivector::from_coeffs(m, vec![Complex64::new(1.0, 1.0); 8]).unwrap();
        let cj = ones.conjugate();
        let expect = [1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, 1.0];
        for (i, s) in expect.iter().enumerate() {
            assert_eq!(cj.coeff(i), Complex64::new(1.0, -1.0) * s);
        }
        let inv = ones.inversion();
        let expect = [1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0];
        for (i, s) in expect.iter().enumerate() {
            assert_eq!(inv.coeff(i), Complex64::new(1.0, 1.0) * s);
        }
    }

    #[test]
    fn unsupported_dimension() {
        assert!(matches!(Multivector::zero(9), Err(Error::UnsupportedDimension(9))));
        assert!(matches!(Multivector::zero(0), Err(Error::UnsupportedDimension(0))));
    }
}
