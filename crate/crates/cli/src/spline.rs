use anyhow::{bail, Result};

/// Natural cubic spline through `(t_i, y_i)` with strictly increasing knots.
#[derive(Clone, Debug)]
pub struct Spline {
    t: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl Spline {
    pub fn new(t: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let n = t.len();
        if n < 3 || y.len() != n {
            bail!("spline needs at least three samples with matching lengths");
        }
        if t.windows(2).any(|w| !(w[1] > w[0])) {
            bail!("sample abscissae must be strictly increasing");
        }
        // tridiagonal system for interior second derivatives, Thomas algorithm
        let h: Vec<f64> = t.windows(2).map(|w| w[1] - w[0]).collect();
        let mut diag = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        let mut upper = vec![0.0; n];
        for i in 1..n - 1 {
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            upper[i] = h[i];
            rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
        }
        for i in 2..n - 1 {
            let w = h[i - 1] / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut m = vec![0.0; n];
        for i in (1..n - 1).rev() {
            m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
        }
        Ok(Spline { t, y, m })
    }

    pub fn range(&self) -> (f64, f64) {
        (self.t[0], self.t[self.t.len() - 1])
    }

    fn segment(&self, x: f64) -> usize {
        let k = self.t.partition_point(|&v| v <= x);
        k.clamp(1, self.t.len() - 1) - 1
    }

    /// Value (`order` 0), slope (1) or curvature (2) at `x`.
    pub fn eval(&self, x: f64, order: usize) -> f64 {
        let i = self.segment(x);
        let h = self.t[i + 1] - self.t[i];
        let (a, b) = ((self.t[i + 1] - x) / h, (x - self.t[i]) / h);
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let (y0, y1) = (self.y[i], self.y[i + 1]);
        match order {
            0 => a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0,
            1 => (y1 - y0) / h + ((1.0 - 3.0 * a * a) * m0 + (3.0 * b * b - 1.0) * m1) * h / 6.0,
            2 => a * m0 + b * m1,
            _ => 0.0,
        }
    }
}
