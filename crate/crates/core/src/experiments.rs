//! Sweeps behind the CLI: spectra, exhaustions of ℤ^d, and the convergence
//! of (λ_k¹)²/λ_k² on growing paths toward the clamped-beam constant.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::eigen::{eigen_sym, Spectrum};
use crate::error::{Error, Result};
use crate::lattice::{DirichletDomain, LatticeDomain, LatticeVertex};
use crate::operator::PolyLaplaceOperator;
use crate::report::{csv_cells_real, emit_svg, CsvTable, LinePlot};

/// Largest path length accepted by the ratio sweep.
pub const MAX_PATH_LENGTH: usize = 2000;

/// Full spectrum of the order-`order` operator on `domain`.
pub fn run_spectrum(domain: &(impl DirichletDomain + ?Sized), order: usize, want_vectors: bool) -> Result<Spectrum> {
    let op = PolyLaplaceOperator::assemble(domain, order)?;
    eigen_sym(op.matrix(), want_vectors)
}

/// Table form of a spectrum for CSV output.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    pub residual_max: Option<f64>,
}

impl From<&Spectrum> for SpectrumReport {
    fn from(s: &Spectrum) -> Self {
        SpectrumReport { eigenvalues: s.eigenvalues.clone(), residual_max: s.residual_max() }
    }
}

impl CsvTable for SpectrumReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["k", "eigenvalue"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.eigenvalues
            .iter()
            .enumerate()
            .map(|(i, &lam)| {
                let mut cells = vec![(i + 1).to_string()];
                cells.extend(csv_cells_real(&[Some(lam)]));
                cells
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// The box [0, s]^d.
    Box,
    /// The ℓ¹ ball of radius s about the origin.
    Ball,
}

impl Shape {
    pub fn domain(self, d: usize, size: usize) -> Result<LatticeDomain> {
        match self {
            Shape::Box => LatticeDomain::cube(d, size as i64),
            Shape::Ball => LatticeDomain::make_ball(d, &LatticeVertex(vec![0; d]), size as u64),
        }
    }
}

impl std::str::FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "box" => Ok(Shape::Box),
            "ball" => Ok(Shape::Ball),
            other => Err(Error::InvalidArgument(format!("unknown shape {other:?}, expected box or ball"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExhaustionStep {
    pub size: usize,
    pub omega_size: usize,
    /// λ_k^l on this step, absent when the domain has fewer than k vertices.
    pub lam: Option<f64>,
    /// (λ₁¹)^l, reported for k = 1 only.
    pub lam1_pow: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExhaustionResult {
    pub shape: Shape,
    pub d: usize,
    pub l: usize,
    pub k: usize,
    pub steps: Vec<ExhaustionStep>,
}

impl ExhaustionResult {
    /// λ_k^l never increases along the steps, up to `tol`.
    pub fn non_increasing(&self, tol: f64) -> bool {
        let lams: Vec<f64> = self.steps.iter().filter_map(|s| s.lam).collect();
        lams.windows(2).all(|w| w[1] <= w[0] + tol)
    }

    pub fn last_lam(&self) -> Option<f64> {
        self.steps.last().and_then(|s| s.lam)
    }
}

/// λ_k^l along the nested domains of the given sizes.
pub fn run_exhaustion(shape: Shape, d: usize, l: usize, k: usize, sizes: &[usize]) -> Result<ExhaustionResult> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidArgument("k and l must be at least 1".into()));
    }
    if sizes.is_empty() || sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::NotNested);
    }
    let steps = sizes
        .par_iter()
        .map(|&size| {
            let domain = shape.domain(d, size)?;
            let kth = |order: usize| -> Result<Option<f64>> {
                Ok(run_spectrum(&domain, order, false)?.eigenvalues.get(k - 1).copied())
            };
            let lam = kth(l)?;
            let lam1_pow = if k == 1 {
                if l == 1 {
                    lam
                } else {
                    kth(1)?.map(|v| v.powi(l as i32))
                }
            } else {
                None
            };
            Ok(ExhaustionStep { size, omega_size: domain.len(), lam, lam1_pow })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExhaustionResult { shape, d, l, k, steps })
}

impl CsvTable for ExhaustionResult {
    fn header(&self) -> Vec<&'static str> {
        vec!["size", "omega_size", "lam", "lam1_pow"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.steps
            .iter()
            .map(|s| {
                let mut cells = vec![s.size.to_string(), s.omega_size.to_string()];
                cells.extend(csv_cells_real(&[s.lam, s.lam1_pow]));
                cells
            })
            .collect()
    }
}

/// The k-th positive root β_k of cos β·cosh β = 1 and c_k = (kπ)⁴/β_k⁴.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BeamConstant {
    pub k: usize,
    pub beta: f64,
    /// |cos β·cosh β − 1| at the returned root.
    pub residual: f64,
    pub c: f64,
}

const ROOT_TOL: f64 = 1e-12;

/// Continuum limit of (λ_k¹)²/λ_k² for the clamped beam on [0, 1].
pub fn clamped_beam_constant(k: usize) -> Result<BeamConstant> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    // cos β − 1/cosh β has the same roots and stays O(1) for large β.
    let g = |b: f64| b.cos() - 1.0 / b.cosh();
    let dg = |b: f64| -b.sin() + b.tanh() / b.cosh();
    let mid = (k as f64 + 0.5) * PI;
    let (mut lo, mut hi) = (mid - 1.0, mid + 1.0);
    if g(lo) * g(hi) > 0.0 {
        return Err(Error::RootFinding { k });
    }
    while hi - lo > 1e-3 {
        let m = 0.5 * (lo + hi);
        if g(lo) * g(m) <= 0.0 {
            hi = m;
        } else {
            lo = m;
        }
    }
    let mut beta = 0.5 * (lo + hi);
    let mut converged = false;
    for _ in 0..50 {
        let step = g(beta) / dg(beta);
        beta -= step;
        if step.abs() <= ROOT_TOL * beta {
            converged = true;
            break;
        }
    }
    let residual = (beta.cos() * beta.cosh() - 1.0).abs();
    let scaled_residual = g(beta).abs();
    if !converged || !(lo - 1e-9..=hi + 1e-9).contains(&beta) || scaled_residual > 1e-10 {
        return Err(Error::RootFinding { k });
    }
    let c = (k as f64 * PI / beta).powi(4);
    Ok(BeamConstant { k, beta, residual, c })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RatioEntry {
    pub n: usize,
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioSeries {
    pub k: usize,
    pub entries: Vec<RatioEntry>,
    pub reference: f64,
    pub beta: f64,
    /// 2·r(2n) − r(n) from the last two entries when they differ by a factor 2.
    pub extrapolated: Option<f64>,
}

impl RatioSeries {
    pub fn all_below_one(&self) -> bool {
        self.entries.iter().all(|e| e.ratio < 1.0)
    }

    /// |r(n_{i+1}) − r(n_i)| for consecutive entries.
    pub fn differences(&self) -> Vec<f64> {
        self.entries.windows(2).map(|w| (w[1].ratio - w[0].ratio).abs()).collect()
    }

    pub fn differences_decreasing(&self) -> bool {
        self.differences().windows(2).all(|w| w[1] < w[0])
    }

    pub fn plot(&self) -> String {
        let points: Vec<(f64, f64)> = self.entries.iter().map(|e| (e.n as f64, e.ratio)).collect();
        let title = format!("(λ_{k}¹)² / λ_{k}² on the path [0, n]", k = self.k);
        let reference_label = format!("c_{} = {:.5}", self.k, self.reference);
        emit_svg(&LinePlot {
            title: &title,
            x_label: "n",
            y_label: "ratio",
            points: &points,
            reference: self.reference,
            reference_label: &reference_label,
            log_x: true,
        })
    }
}

/// Richardson extrapolation 2·r(2n) − r(n) for a first-order error.
pub fn richardson(r_n: f64, r_2n: f64) -> f64 {
    2.0 * r_2n - r_n
}

/// (λ_k¹)²/λ_k² on the paths [0, n] for each n, against c_k.
pub fn run_appendix_fig1(k: usize, n_list: &[usize]) -> Result<RatioSeries> {
    if n_list.is_empty() || n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("path lengths must be strictly increasing".into()));
    }
    if let Some(&n) = n_list.iter().find(|&&n| n > MAX_PATH_LENGTH) {
        return Err(Error::CapExceeded { what: "path length", size: n, cap: MAX_PATH_LENGTH });
    }
    if let Some(&n) = n_list.iter().find(|&&n| n + 1 < k) {
        return Err(Error::InvalidArgument(format!("path [0, {n}] has fewer than {k} vertices")));
    }
    let beam = clamped_beam_constant(k)?;
    let entries = n_list
        .par_iter()
        .map(|&n| {
            let path = LatticeDomain::cube(1, n as i64)?;
            let (a, b) = rayon::join(|| run_spectrum(&path, 1, false), || run_spectrum(&path, 2, false));
            let (a, b) = (a?.eigenvalues[k - 1], b?.eigenvalues[k - 1]);
            Ok(RatioEntry { n, ratio: a * a / b })
        })
        .collect::<Result<Vec<_>>>()?;
    let extrapolated = match entries.as_slice() {
        [.., x, y] if y.n == 2 * x.n => Some(richardson(x.ratio, y.ratio)),
        _ => None,
    };
    Ok(RatioSeries { k, entries, reference: beam.c, beta: beam.beta, extrapolated })
}

impl CsvTable for RatioSeries {
    fn header(&self) -> Vec<&'static str> {
        vec!["n", "ratio", "reference"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|e| {
                let mut cells = vec![e.n.to_string()];
                cells.extend(csv_cells_real(&[Some(e.ratio), Some(self.reference)]));
                cells
            })
            .collect()
    }
}
