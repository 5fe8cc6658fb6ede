//! Multidimensional complex FFT over row-major arrays.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Plans for every axis of a fixed shape.
pub struct NdFft {
    shape: Vec<usize>,
    forward: Vec<Arc<dyn Fft<f64>>>,
    inverse: Vec<Arc<dyn Fft<f64>>>,
}

impl NdFft {
    pub fn new(shape: &[usize]) -> Self {
        let mut planner = FftPlanner::new();
        NdFft {
            shape: shape.to_vec(),
            forward: shape.iter().map(|&n| planner.plan_fft_forward(n)).collect(),
            inverse: shape.iter().map(|&n| planner.plan_fft_inverse(n)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Unnormalized forward transform, `Σ x_k e^{-2πi jk/n}` along every axis.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.apply(data, &self.forward);
    }

    /// Inverse transform including the `1/N` factor.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.apply(data, &self.inverse);
        let s = 1.0 / self.len() as f64;
        for c in data.iter_mut() {
            *c *= s;
        }
    }

    fn apply(&self, data: &mut [Complex64], plans: &[Arc<dyn Fft<f64>>]) {
        assert_eq!(data.len(), self.len(), "array length does not match the planned shape");
        let d = self.shape.len();
        let mut stride = 1;
        for axis in (0..d).rev() {
            let n = self.shape[axis];
            let plan = &plans[axis];
            if stride == 1 {
                for chunk in data.chunks_exact_mut(n) {
                    plan.process(chunk);
                }
            } else {
                let block = n * stride;
                let mut line = vec![Complex64::new(0.0, 0.0); n];
                for outer in data.chunks_exact_mut(block) {
                    for inner in 0..stride {
                        for (k, slot) in line.iter_mut().enumerate() {
                            *slot = outer[inner + k * stride];
                        }
                        plan.process(&mut line);
                        for (k, v) in line.iter().enumerate() {
                            outer[inner + k * stride] = *v;
                        }
                    }
                }
            }
            stride *= n;
        }
    }
}

/// Signed integer frequency index of bin `k` out of `n` (`k` for `k < n/2`, else `k - n`).
pub fn signed_index(k: usize, n: usize) -> i64 {
    if k < n.div_ceil(2) {
        k as i64
    } else {
        k as i64 - n as i64
    }
}
