//! Numerics for generalized Clifford-Jacobi polynomials on axial functions,
//! their Fourier spectra, and the continuous wavelet transform built from them.
//!
//! Layout:
//! - [`clifford`]: dense multivectors over the complexified Clifford algebra, grid fields,
//!   and a finite-difference Dirac operator.
//! - [`axial`]: axial polynomials, the spheroidal weight, and their exact Dirac derivatives.
//! - [`jacobi`]: the recursive polynomial family, a Rodrigues-formula checker and moments.
//! - [`fractional`]: fractional integrals/derivatives and a Hermite-basis fractional Fourier transform.
//! - [`spectral`]: radial Hankel-type transforms and the spectrum of axial functions.
//! - [`cwt`]: wavelet descriptors, admissibility, forward transform, Parseval and reconstruction.

// negated comparisons reject NaN on purpose
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::manual_is_multiple_of)]

pub mod axial;
pub mod clifford;
pub mod cwt;
pub mod error;
pub mod fft;
pub mod fractional;
pub mod jacobi;
pub mod quad;
pub mod spectral;

pub use num_complex::Complex64;

pub use axial::{AxialPolynomial, AxialValue, WeightParams};
pub use clifford::{GridField, GridGeometry, Multivector, Vector};
pub use cwt::{CwtResult, WaveletDescriptor};
pub use error::{Error, Result};
pub use jacobi::JacobiPolynomial;
pub use quad::QuadConfig;
pub use spectral::AxialSpectrum;
