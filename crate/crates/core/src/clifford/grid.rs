use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{blade_product, vector_blade, Multivector, Vector, MAX_DIM};
use crate::error::{precondition, Error, Result};

/// A regular rectilinear grid: sample `idx` sits at `origin + idx * spacing`, last axis fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct GridGeometry {
    pub shape: Vec<usize>,
    pub spacing: Vec<f64>,
    pub origin: Vec<f64>,
}

impl GridGeometry {
    pub fn new(shape: Vec<usize>, spacing: Vec<f64>, origin: Vec<f64>) -> Result<Self> {
        let m = shape.len();
        if m == 0 || m > MAX_DIM {
            return Err(Error::UnsupportedDimension(m));
        }
        if spacing.len() != m {
            return Err(Error::DimensionMismatch { left: spacing.len(), right: m });
        }
        if origin.len() != m {
            return Err(Error::DimensionMismatch { left: origin.len(), right: m });
        }
        if shape.contains(&0) {
            return Err(precondition("shape", "every axis needs at least one sample"));
        }
        if spacing.iter().any(|&h| !(h > 0.0 && h.is_finite())) {
            return Err(precondition("spacing", "spacing must be positive and finite"));
        }
        Ok(GridGeometry { shape, spacing, origin })
    }

    /// Cube `[lo, hi)^m` with `n` samples per axis and periodic spacing `(hi - lo) / n`.
    pub fn cube(m: usize, n: usize, lo: f64, hi: f64) -> Result<Self> {
        let h = (hi - lo) / n as f64;
        Self::new(vec![n; m], vec![h; m], vec![lo; m])
    }

    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Volume of one cell.
    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    /// Row-major strides.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dim()];
        for j in (0..self.dim().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * self.shape[j + 1];
        }
        strides
    }

    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim()];
        for j in (0..self.dim()).rev() {
            idx[j] = flat % self.shape[j];
            flat /= self.shape[j];
        }
        idx
    }

    pub fn position(&self, flat: usize) -> Vector {
        let idx = self.unravel(flat);
        Vector(
            idx.iter()
                .enumerate()
                .map(|(j, &i)| self.origin[j] + i as f64 * self.spacing[j])
                .collect(),
        )
    }
}

/// Multivector-valued samples on a grid, stored per blade channel.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    geometry: GridGeometry,
    channels: BTreeMap<usize, Vec<Complex64>>,
}

impl GridField {
    /// A field with no channels (identically zero).
    pub fn empty(geometry: GridGeometry) -> Self {
        GridField { geometry, channels: BTreeMap::new() }
    }

    pub fn from_scalar_fn(geometry: GridGeometry, f: impl Fn(&Vector) -> Complex64) -> Self {
        let data = (0..geometry.len()).map(|i| f(&geometry.position(i))).collect();
        let mut field = Self::empty(geometry);
        field.channels.insert(0, data);
        field
    }

    pub fn from_multivector_fn(geometry: GridGeometry, f: impl Fn(&Vector) -> Multivector) -> Result<Self> {
        let m = geometry.dim();
        let n = 1 << m;
        let mut chans = vec![Vec::with_capacity(geometry.len()); n];
        for i in 0..geometry.len() {
            let mv = f(&geometry.position(i));
            if mv.dim() != m {
                return Err(Error::DimensionMismatch { left: mv.dim(), right: m });
            }
            for (k, c) in mv.coeffs().iter().enumerate() {
                chans[k].push(*c);
            }
        }
        let mut field = Self::empty(geometry);
        for (k, data) in chans.into_iter().enumerate() {
            if data.iter().any(|c| *c != Complex64::new(0.0, 0.0)) {
                field.channels.insert(k, data);
            }
        }
        Ok(field)
    }

    pub fn geometry(&self) -> &GridGeometry {
        &self.geometry
    }

    pub fn dim(&self) -> usize {
        self.geometry.dim()
    }

    pub fn channel(&self, blade: usize) -> Option<&[Complex64]> {
        self.channels.get(&blade).map(|v| v.as_slice())
    }

    pub fn channel_mut(&mut self, blade: usize) -> Option<&mut Vec<Complex64>> {
        self.channels.get_mut(&blade)
    }

    /// Canonical indices of the stored channels, ascending.
    pub fn channel_indices(&self) -> Vec<usize> {
        self.channels.keys().copied().collect()
    }

    pub fn channels(&self) -> impl Iterator<Item = (usize, &[Complex64])> {
        self.channels.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    pub fn set_channel(&mut self, blade: usize, data: Vec<Complex64>) -> Result<()> {
        if blade >= 1 << self.dim() {
            return Err(precondition("blade index", format!("{blade} out of range for m = {}", self.dim())));
        }
        if data.len() != self.geometry.len() {
            return Err(Error::DimensionMismatch { left: data.len(), right: self.geometry.len() });
        }
        self.channels.insert(blade, data);
        Ok(())
    }

    pub fn remove_channel(&mut self, blade: usize) -> Option<Vec<Complex64>> {
        self.channels.remove(&blade)
    }

    /// The multivector sample at flat index `i`.
    pub fn sample(&self, i: usize) -> Multivector {
        let mut mv = Multivector::zero(self.dim()).expect("grid dimension validated");
        for (&k, data) in &self.channels {
            mv.coeffs_mut()[k] = data[i];
        }
        mv
    }

    /// Discrete `L^2` norm, `sqrt(Σ |f|^2 h^m)` over all channels.
    pub fn l2_norm(&self) -> f64 {
        let s: f64 = self.channels.values().flat_map(|v| v.iter()).map(|c| c.norm_sqr()).sum();
        (s * self.geometry.cell_volume()).sqrt()
    }

    /// Scalar channel, or an error if any other channel is nonzero.
    pub fn scalar_samples(&self) -> Result<Vec<Complex64>> {
        for (&k, data) in &self.channels {
            if k != 0 && data.iter().any(|c| *c != Complex64::new(0.0, 0.0)) {
                return Err(Error::NonScalarField(k));
            }
        }
        Ok(self
            .channels
            .get(&0)
            .cloned()
            .unwrap_or_else(|| vec![Complex64::new(0.0, 0.0); self.geometry.len()]))
    }
}

/// Second-order finite-difference Dirac operator `Σ_j e_j ∂_j f` (left multiplication).
///
/// Central differences inside, second-order one-sided differences on the boundary.
pub fn dirac_fd(field: &GridField) -> Result<GridField> {
    let geo = field.geometry();
    let m = geo.dim();
    for (axis, &len) in geo.shape.iter().enumerate() {
        if len < 5 {
            return Err(Error::GridTooSmall { axis, len, min: 5 });
        }
    }
    let strides = geo.strides();
    let n = geo.len();
    let mut out: BTreeMap<usize, Vec<Complex64>> = BTreeMap::new();
    for (blade, data) in field.channels() {
        for j in 0..m {
            let (target, sign) = blade_product(m, vector_blade(j + 1), blade);
            let h = geo.spacing[j];
            let stride = strides[j];
            let len = geo.shape[j];
            let acc = out.entry(target).or_insert_with(|| vec![Complex64::new(0.0, 0.0); n]);
            for (i, slot) in acc.iter_mut().enumerate() {
                let pos = (i / stride) % len;
                let d = if pos == 0 {
                    (-3.0 * data[i] + 4.0 * data[i + stride] - data[i + 2 * stride]) / (2.0 * h)
                } else if pos == len - 1 {
                    (3.0 * data[i] - 4.0 * data[i - stride] + data[i - 2 * stride]) / (2.0 * h)
                } else {
                    (data[i + stride] - data[i - stride]) / (2.0 * h)
                };
                *slot += d * sign;
            }
        }
    }
    let mut result = GridField::empty(geo.clone());
    result.channels = out;
    Ok(result)
}
