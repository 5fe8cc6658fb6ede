use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cjw_core::clifford::{read_field, write_field};
use cjw_core::cwt::{admissibility_with, cwt_forward, log_scales, reconstruct};
use cjw_core::fractional::{fractional_derivative, fractional_integral, DerivativeKind, Func1D, IntegralKind};
use cjw_core::jacobi::generate;
use cjw_core::spectral::axial_spectrum;
use cjw_core::{Complex64, CwtResult, GridField, GridGeometry, QuadConfig, WaveletDescriptor, WeightParams};

use crate::report::Report;
use crate::spline::Spline;
use crate::suites;

#[derive(Parser, Debug)]
#[command(name = "cjw", version, about = "Clifford-Jacobi polynomials, spectra and wavelet transforms")]
pub struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct WaveletArgs {
    /// Polynomial order ℓ.
    #[arg(long)]
    pub l: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    /// Dimension m.
    #[arg(long)]
    pub m: usize,
}

impl WaveletArgs {
    fn descriptor(&self) -> Result<WaveletDescriptor> {
        WaveletDescriptor::new(self.l, self.alpha, self.beta, self.m).context("invalid wavelet parameters")
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficient CSV line of G_{ℓ,m}^{α,β}.
    GenPoly {
        #[command(flatten)]
        w: WaveletArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(suites::SUITES))]
        suite: String,
    },
    /// Radial spectrum of a mother wavelet as CSV.
    Spectrum {
        #[command(flatten)]
        w: WaveletArgs,
        #[arg(long, default_value_t = 10.0)]
        rho_max: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Admissibility constant of a mother wavelet.
    Admissibility {
        #[command(flatten)]
        w: WaveletArgs,
    },
    /// Write a sample scalar field (Gaussian bump or zeros).
    GenField {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 128)]
        n: usize,
        #[arg(long, default_value_t = 8.0)]
        half_width: f64,
        #[arg(long, value_enum, default_value_t = FieldKind::Gaussian)]
        kind: FieldKind,
        #[arg(long, default_value_t = 0.5)]
        sigma: f64,
        /// Subtract the grid mean, then rescale to unit norm.
        #[arg(long)]
        zero_mean: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Forward wavelet transform of a scalar field.
    Cwt {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        w: WaveletArgs,
        /// Number of log-spaced scales.
        #[arg(long, default_value_t = 32)]
        scales: usize,
        #[arg(long)]
        amin: f64,
        #[arg(long)]
        amax: f64,
        /// Output prefix for `<prefix>_scaleNNN.json` and `<prefix>_summary.csv`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Invert coefficients written by `cwt`.
    Reconstruct {
        /// Prefix given to `cwt --out`.
        #[arg(long)]
        coeffs: PathBuf,
        #[command(flatten)]
        w: WaveletArgs,
        #[arg(long)]
        out: PathBuf,
        /// Original field; the report then carries the relative L2 error.
        #[arg(long)]
        reference: Option<PathBuf>,
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
    },
    /// Fractional integral or derivative of sampled data.
    Frac {
        #[arg(long, value_enum)]
        kind: FracKind,
        #[arg(long)]
        alpha: f64,
        /// Lower terminal.
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        /// Evaluation points, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        t: Vec<f64>,
        /// CSV with header `t,f` and increasing `t`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Gaussian,
    Zero,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FracKind {
    RlIntegral,
    HadamardIntegral,
    RlDerivative,
    Caputo,
}

/// Files produced by a command, written together once everything is computed.
#[derive(Default)]
pub struct Artifacts {
    /// Printed instead of the report when a command writes its result to standard output.
    pub stdout: Option<String>,
    bytes: Vec<(PathBuf, Vec<u8>)>,
    fields: Vec<(PathBuf, GridField)>,
}

impl Artifacts {
    fn text(&mut self, path: PathBuf, text: String) {
        self.bytes.push((path, text.into_bytes()));
    }

    fn field(&mut self, path: PathBuf, field: GridField) {
        self.fields.push((path, field));
    }

    pub fn write(self) -> Result<()> {
        for (path, data) in self.bytes {
            fs::write(&path, data).with_context(|| format!("writing {}", path.display()))?;
        }
        for (path, field) in self.fields {
            write_field(&field, &path).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }
}

pub fn run(cli: &Cli) -> Result<(Report, Artifacts)> {
    let mut out = Artifacts::default();
    let report = match &cli.command {
        Command::GenPoly { w, out: path } => gen_poly(w, path.as_deref(), &mut out)?,
        Command::Verify { suite } => suites::run_suite(suite)?,
        Command::Spectrum { w, rho_max, points, out: path } => spectrum(w, *rho_max, *points, path, &mut out)?,
        Command::Admissibility { w } => admissibility(w)?,
        Command::GenField { m, n, half_width, kind, sigma, zero_mean, out: path } => {
            gen_field(*m, *n, *half_width, *kind, *sigma, *zero_mean, path, &mut out)?
        }
        Command::Cwt { input, w, scales, amin, amax, out: prefix } => cwt(input, w, *scales, *amin, *amax, prefix, &mut out)?,
        Command::Reconstruct { coeffs, w, out: path, reference, tol } => {
            reconstruct_cmd(coeffs, w, path, reference.as_deref(), *tol, &mut out)?
        }
        Command::Frac { kind, alpha, a, t, input, out: path } => frac(*kind, *alpha, *a, t, input, path, &mut out)?,
    };
    if let Some(path) = &cli.report {
        out.text(path.clone(), report.to_json());
    }
    Ok((report, out))
}

fn csv_text(header: &[&str], rows: &[Vec<f64>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|v| v.to_string()))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn gen_poly(w: &WaveletArgs, path: Option<&Path>, out: &mut Artifacts) -> Result<Report> {
    let params = WeightParams::new(w.alpha, w.beta, w.m)?;
    let g = generate(w.l, &params);
    if g.degree_dropped() {
        log::warn!("leading coefficient of G_{} vanishes for these parameters; degree dropped", w.l);
    }
    let line = g.poly.to_csv_line() + "\n";
    match path {
        Some(p) => out.text(p.to_path_buf(), line),
        None => out.stdout = Some(line),
    }
    let imag = g.poly.coeffs().iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    let finite = g.poly.coeffs().iter().all(|c| c.re.is_finite() && c.im.is_finite());
    Ok(Report::artifact("gen-poly", g.poly.coeffs().len(), imag, finite))
}

fn spectrum(w: &WaveletArgs, rho_max: f64, points: usize, path: &Path, out: &mut Artifacts) -> Result<Report> {
    let wd = w.descriptor()?;
    if !(rho_max > 0.0) || points < 2 {
        bail!("precondition `rho_max > 0, points ≥ 2` violated");
    }
    let rho: Vec<f64> = (0..points).map(|k| rho_max * k as f64 / (points - 1) as f64).collect();
    let sp = axial_spectrum(&wd, &rho, &QuadConfig::from_env())?;
    let rows: Vec<Vec<f64>> = (0..points)
        .map(|k| vec![rho[k], sp.scalar[k].re, sp.scalar[k].im, sp.vector[k].re, sp.vector[k].im])
        .collect();
    out.text(path.to_path_buf(), csv_text(&["rho", "scalar_re", "scalar_im", "vector_re", "vector_im"], &rows)?);
    let peak = sp.scalar.iter().chain(&sp.vector).map(|v| v.norm()).fold(0.0, f64::max);
    let finite = rows.iter().flatten().all(|v| v.is_finite());
    // a wavelet spectrum vanishes at the origin
    let mean = if peak > 0.0 { sp.scalar[0].norm() / peak } else { 0.0 };
    Ok(Report::artifact("spectrum", points, mean, finite))
}

fn admissibility(w: &WaveletArgs) -> Result<Report> {
    let wd = w.descriptor()?;
    let cfg = QuadConfig::from_env();
    let a = admissibility_with(&wd, &cfg)?;
    let fine = admissibility_with(&wd, &cfg.doubled())?;
    let change = (fine - a).abs() / a;
    let mut rep = Report::artifact("admissibility", 1, change, a.is_finite() && a > 0.0).with_value(a);
    rep.pass &= change < 1e-3;
    Ok(rep)
}

#[allow(clippy::too_many_arguments)]
fn gen_field(m: usize, n: usize, half: f64, kind: FieldKind, sigma: f64, zero_mean: bool, path: &Path, out: &mut Artifacts) -> Result<Report> {
    let geo = GridGeometry::cube(m, n, -half, half)?;
    let mut f = match kind {
        FieldKind::Zero => GridField::from_scalar_fn(geo, |_| Complex64::new(0.0, 0.0)),
        FieldKind::Gaussian => {
            if !(sigma > 0.0) {
                bail!("precondition `sigma > 0` violated");
            }
            GridField::from_scalar_fn(geo, |x| Complex64::new((-x.dot(x) / (2.0 * sigma * sigma)).exp(), 0.0))
        }
    };
    if zero_mean && kind == FieldKind::Gaussian {
        let data = f.channel_mut(0).expect("scalar channel");
        let mean = data.iter().sum::<Complex64>() / data.len() as f64;
        data.iter_mut().for_each(|v| *v -= mean);
    }
    let norm = f.l2_norm();
    if norm > 0.0 {
        f.channel_mut(0).expect("scalar channel").iter_mut().for_each(|v| *v /= norm);
    }
    let cases = f.geometry().len();
    out.field(path.to_path_buf(), f);
    Ok(Report::artifact("gen-field", cases, 0.0, norm.is_finite()))
}

fn scale_path(prefix: &Path, k: usize) -> PathBuf {
    PathBuf::from(format!("{}_scale{k:03}.json", prefix.display()))
}

fn summary_path(prefix: &Path) -> PathBuf {
    PathBuf::from(format!("{}_summary.csv", prefix.display()))
}

fn cwt(input: &Path, w: &WaveletArgs, count: usize, amin: f64, amax: f64, prefix: &Path, out: &mut Artifacts) -> Result<Report> {
    let wd = w.descriptor()?;
    let scales = log_scales(amin, amax, count)?;
    let f = read_field(input).with_context(|| format!("reading {}", input.display()))?;
    let cw = cwt_forward(&f, &wd, &scales)?;
    let energies = cw.energies();
    let maxima = cw.max_magnitudes();
    let rows: Vec<Vec<f64>> = (0..count).map(|k| vec![scales[k], energies[k], maxima[k]]).collect();
    let finite = rows.iter().flatten().all(|v| v.is_finite());
    out.text(summary_path(prefix), csv_text(&["scale", "energy", "max_abs"], &rows)?);
    for (k, c) in cw.coefficients.into_iter().enumerate() {
        out.field(scale_path(prefix, k), c);
    }
    Ok(Report::artifact("cwt", count, 0.0, finite))
}

fn read_scales(prefix: &Path) -> Result<Vec<f64>> {
    let path = summary_path(prefix);
    let mut rd = csv::Reader::from_path(&path).with_context(|| format!("reading {}", path.display()))?;
    let mut scales = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let a: f64 = rec.get(0).context("empty summary row")?.trim().parse().context("scale column")?;
        scales.push(a);
    }
    Ok(scales)
}

fn reconstruct_cmd(prefix: &Path, w: &WaveletArgs, path: &Path, reference: Option<&Path>, tol: f64, out: &mut Artifacts) -> Result<Report> {
    let wd = w.descriptor()?;
    let scales = read_scales(prefix)?;
    let coefficients = (0..scales.len())
        .map(|k| read_field(&scale_path(prefix, k)).with_context(|| format!("reading scale {k}")))
        .collect::<Result<Vec<_>>>()?;
    let geometry = coefficients.first().context("no coefficient files")?.geometry().clone();
    let cw = CwtResult { scales, coefficients, wavelet: wd.clone(), geometry };
    let rec = reconstruct(&cw, &wd)?;
    let report = match reference {
        Some(r) => {
            let f = read_field(r).with_context(|| format!("reading {}", r.display()))?;
            let target = f.scalar_samples()?;
            let got = rec.field.channel(0).context("scalar channel")?;
            if target.len() != got.len() {
                bail!("reference grid does not match the coefficient grid");
            }
            let d: f64 = got.iter().zip(&target).map(|(x, y)| (x - y).norm_sqr()).sum();
            let n: f64 = target.iter().map(|y| y.norm_sqr()).sum();
            let err = if n > 0.0 { (d / n).sqrt() } else { d.sqrt() };
            let mut rep = Report::artifact("reconstruct", target.len(), err, err.is_finite());
            rep.pass &= err < tol;
            rep.with_value(rec.residual)
        }
        None => Report::artifact("reconstruct", geometry_len(&rec.field), rec.residual, rec.residual.is_finite()),
    };
    out.field(path.to_path_buf(), rec.field);
    Ok(report)
}

fn geometry_len(f: &GridField) -> usize {
    f.geometry().len()
}

fn read_samples(path: &Path) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut rd = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let (mut t, mut y) = (Vec::new(), Vec::new());
    for (i, rec) in rd.records().enumerate() {
        let rec = rec?;
        let parse = |k: usize| -> Result<f64> {
            rec.get(k).with_context(|| format!("row {} needs two columns", i + 1))?.trim().parse().with_context(|| format!("row {}", i + 1))
        };
        t.push(parse(0)?);
        y.push(parse(1)?);
    }
    Ok((t, y))
}

fn frac(kind: FracKind, alpha: f64, a: f64, ts: &[f64], input: &Path, path: &Path, out: &mut Artifacts) -> Result<Report> {
    let (t, y) = read_samples(input)?;
    let spline = Spline::new(t, y)?;
    let (lo, hi) = spline.range();
    if a < lo || ts.iter().any(|&v| v > hi) {
        bail!("precondition `[a, t] inside the sampled range [{lo}, {hi}]` violated");
    }
    let (s0, s1, s2) = (spline.clone(), spline.clone(), spline);
    let f = Func1D::new(move |x| s0.eval(x, 0))
        .with_derivative(move |x| s1.eval(x, 1))
        .with_derivative(move |x| s2.eval(x, 2));
    let mut rows = Vec::with_capacity(ts.len());
    for &tv in ts {
        let v = match kind {
            FracKind::RlIntegral => fractional_integral(&f, alpha, a, tv, IntegralKind::RiemannLiouville)?,
            FracKind::HadamardIntegral => fractional_integral(&f, alpha, a, tv, IntegralKind::Hadamard)?,
            FracKind::RlDerivative => fractional_derivative(&f, alpha, a, tv, DerivativeKind::RiemannLiouville)?,
            FracKind::Caputo => fractional_derivative(&f, alpha, a, tv, DerivativeKind::Caputo)?,
        };
        rows.push(vec![tv, v]);
    }
    let finite = rows.iter().flatten().all(|v| v.is_finite());
    out.text(path.to_path_buf(), csv_text(&["t", "value"], &rows)?);
    Ok(Report::artifact("frac", ts.len(), 0.0, finite))
}
