//! Fourier-side identities for domains in ℤ^d, checked by uniform-grid
//! quadrature on [−π, π)^d.
//!
//! With f̂(z) = ⟨f, h_z⟩_Ω = Σ_{x∈Ω} f(x) e^{−i⟨x,z⟩} and Φ(z) = Σᵢ (2 − 2cos zᵢ):
//!
//! ```text
//! ⟨f, f⟩_Ω                 = (2π)^{−d} ∫ |f̂(z)|² dz
//! ⟨f, (−1)^l Δ_Ω^{l,D} f⟩_Ω = (2π)^{−d} ∫ Φ(z)^l |f̂(z)|² dz
//! ```
//!
//! Both integrands are trigonometric polynomials, so an N-point grid per axis
//! integrates them exactly once N exceeds twice their degree.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::eigen::eigen_sym;
use crate::error::{Error, Result};
use crate::lattice::{LatticeDomain, Region};
use crate::matrix::{CompensatedSum, Matrix};
use crate::operator::{boundary_measure, PolyLaplaceOperator};

/// Uniform grid with N nodes per axis on [−π, π)^d.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FourierGrid {
    pub d: usize,
    pub points_per_dim: usize,
}

impl FourierGrid {
    pub fn new(d: usize, points_per_dim: usize) -> Result<Self> {
        if d == 0 || points_per_dim == 0 {
            return Err(Error::InvalidArgument("grid needs d >= 1 and N >= 1".into()));
        }
        Ok(FourierGrid { d, points_per_dim })
    }

    /// N = 2·(extent + order) + 1, the smallest exact grid for the domain.
    pub fn for_domain(domain: &LatticeDomain, order: usize) -> Self {
        FourierGrid { d: domain.dim(), points_per_dim: required_points(domain.extent(), order) }
    }

    pub fn node_count(&self) -> usize {
        self.points_per_dim.pow(self.d as u32)
    }

    /// Quadrature weight (2π/N)^d of each node.
    pub fn weight(&self) -> f64 {
        (2.0 * PI / self.points_per_dim as f64).powi(self.d as i32)
    }

    pub fn axis(&self) -> Vec<f64> {
        let n = self.points_per_dim as f64;
        (0..self.points_per_dim).map(|j| -PI + 2.0 * PI * j as f64 / n).collect()
    }

    /// Node coordinates as per-axis indices, last axis fastest.
    pub fn nodes(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let n = self.points_per_dim;
        (0..self.node_count()).map(move |mut flat| {
            let mut idx = vec![0; self.d];
            for slot in idx.iter_mut().rev() {
                *slot = flat % n;
                flat /= n;
            }
            idx
        })
    }

    /// Whether the grid integrates trig polynomials of degree extent + order exactly.
    pub fn certifies(&self, extent: usize, order: usize) -> bool {
        self.points_per_dim > 2 * (extent + order)
    }

    fn certify(&self, extent: usize, order: usize) -> Result<()> {
        if self.certifies(extent, order) {
            Ok(())
        } else {
            Err(Error::Certificate { required: required_points(extent, order), actual: self.points_per_dim })
        }
    }

    /// (2π)^{−d} ∫ g, by the grid rule.
    pub fn mean(&self, g: impl Fn(&[f64]) -> f64) -> f64 {
        let axis = self.axis();
        let mut z = vec![0.0; self.d];
        let mut acc = CompensatedSum::default();
        for idx in self.nodes() {
            for (zi, &j) in z.iter_mut().zip(&idx) {
                *zi = axis[j];
            }
            acc.add(g(&z));
        }
        acc.value() / self.node_count() as f64
    }
}

fn required_points(extent: usize, order: usize) -> usize {
    2 * (extent + order) + 1
}

/// Φ(z) = Σᵢ (2 − 2cos zᵢ).
pub fn phi(z: &[f64]) -> f64 {
    z.iter().map(|zi| 2.0 - 2.0 * zi.cos()).sum()
}

/// ⟨f, h_z⟩_Ω = Σ_{x∈Ω} f(x) e^{−i⟨x,z⟩}.
pub fn hz_inner(domain: &LatticeDomain, f: &[f64], z: &[f64]) -> Complex64 {
    domain
        .vertices()
        .iter()
        .zip(f)
        .map(|(x, &fx)| {
            let phase: f64 = x.0.iter().zip(z).map(|(&c, &zi)| c as f64 * zi).sum();
            Complex64::from_polar(fx, -phase)
        })
        .sum()
}

// e^{−i xᵢ z} for every vertex coordinate and grid node along each axis.
struct PhaseTable {
    // [vertex][axis][node]
    phases: Vec<Vec<Vec<Complex64>>>,
}

impl PhaseTable {
    fn new(domain: &LatticeDomain, grid: &FourierGrid) -> Self {
        let axis = grid.axis();
        let phases = domain
            .vertices()
            .iter()
            .map(|x| x.0.iter().map(|&c| axis.iter().map(|&z| Complex64::from_polar(1.0, -(c as f64) * z)).collect()).collect())
            .collect();
        PhaseTable { phases }
    }

    fn transform(&self, f: &[f64], idx: &[usize]) -> Complex64 {
        self.phases
            .iter()
            .zip(f)
            .map(|(per_axis, &fx)| per_axis.iter().zip(idx).fold(Complex64::new(fx, 0.0), |acc, (t, &j)| acc * t[j]))
            .sum()
    }
}

/// Outcome of one quadrature identity check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FourierCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
    pub grid_n: usize,
    pub certificate_ok: bool,
}

impl FourierCheck {
    fn new(lhs: f64, rhs: f64, grid: &FourierGrid) -> Self {
        let rel_err = (lhs - rhs).abs() / lhs.abs().max(f64::MIN_POSITIVE);
        FourierCheck { lhs, rhs, rel_err, grid_n: grid.points_per_dim, certificate_ok: true }
    }
}

fn quadrature_of_power(domain: &LatticeDomain, f: &[f64], order: usize, grid: &FourierGrid) -> f64 {
    let table = PhaseTable::new(domain, grid);
    let axis = grid.axis();
    let mut acc = CompensatedSum::default();
    for idx in grid.nodes() {
        let fhat = table.transform(f, &idx);
        let weight = if order == 0 {
            1.0
        } else {
            let z: Vec<f64> = idx.iter().map(|&j| axis[j]).collect();
            phi(&z).powi(order as i32)
        };
        acc.add(weight * fhat.norm_sqr());
    }
    acc.value() / grid.node_count() as f64
}

fn check_inputs(domain: &LatticeDomain, f: &[f64], grid: &FourierGrid) -> Result<()> {
    if grid.d != domain.dim() {
        return Err(Error::DimensionMismatch { expected: domain.dim(), got: grid.d });
    }
    if f.len() != domain.len() {
        return Err(Error::InvalidArgument(format!("f has {} values for {} vertices", f.len(), domain.len())));
    }
    Ok(())
}

/// ⟨f,f⟩_Ω against the quadrature of (2π)^{−d} ∫ |f̂|².
pub fn plancherel_check(domain: &LatticeDomain, f: &[f64], grid: &FourierGrid) -> Result<FourierCheck> {
    check_inputs(domain, f, grid)?;
    grid.certify(domain.extent(), 0)?;
    let lhs = crate::matrix::dot(f, f);
    Ok(FourierCheck::new(lhs, quadrature_of_power(domain, f, 0, grid), grid))
}

/// ⟨f, (−1)^l Δ_Ω^{l,D} f⟩_Ω against the quadrature of (2π)^{−d} ∫ Φ^l |f̂|².
pub fn polylaplace_fourier_check(
    domain: &LatticeDomain,
    f: &[f64],
    order: usize,
    grid: &FourierGrid,
) -> Result<FourierCheck> {
    check_inputs(domain, f, grid)?;
    grid.certify(domain.extent(), order)?;
    let lhs = PolyLaplaceOperator::assemble(domain, order)?.quadratic_form(f);
    Ok(FourierCheck::new(lhs, quadrature_of_power(domain, f, order, grid), grid))
}

/// Largest value over the grid of |⟨h_z, M h_z⟩| − Φ(z)^l |Ω| − |∂^lΩ|.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HzBoundCheck {
    pub max_excess: f64,
    /// (4d)^l |Ω| + |∂^lΩ|, the largest possible right-hand side.
    pub scale: f64,
    pub boundary: f64,
    pub nodes: usize,
}

impl HzBoundCheck {
    pub fn holds(&self, rel: f64) -> bool {
        self.max_excess <= rel * self.scale
    }
}

pub fn hz_operator_bound_check(domain: &LatticeDomain, order: usize, grid: &FourierGrid) -> Result<HzBoundCheck> {
    if grid.d != domain.dim() {
        return Err(Error::DimensionMismatch { expected: domain.dim(), got: grid.d });
    }
    let op = PolyLaplaceOperator::assemble(domain, order)?;
    let boundary = boundary_measure(domain, order)?.exact;
    // ⟨h_z, M h_z⟩ = Σ_{x,y} M_xy e^{i⟨x−y,z⟩}; collect M by offset x − y first.
    let verts = domain.vertices();
    let mut by_offset: BTreeMap<Vec<i64>, f64> = BTreeMap::new();
    for (i, x) in verts.iter().enumerate() {
        for (j, y) in verts.iter().enumerate() {
            let m = op.matrix()[(i, j)];
            if m != 0.0 {
                let delta: Vec<i64> = x.0.iter().zip(&y.0).map(|(a, b)| a - b).collect();
                *by_offset.entry(delta).or_insert(0.0) += m;
            }
        }
    }
    let n = domain.len() as f64;
    let d = domain.dim() as f64;
    let axis = grid.axis();
    let mut max_excess = f64::NEG_INFINITY;
    let mut z = vec![0.0; grid.d];
    for idx in grid.nodes() {
        for (zi, &j) in z.iter_mut().zip(&idx) {
            *zi = axis[j];
        }
        let form: Complex64 = by_offset
            .iter()
            .map(|(delta, &c)| {
                let phase: f64 = delta.iter().zip(&z).map(|(&a, &b)| a as f64 * b).sum();
                Complex64::from_polar(c, phase)
            })
            .sum();
        let excess = form.norm() - phi(&z).powi(order as i32) * n - boundary;
        max_excess = max_excess.max(excess);
    }
    Ok(HzBoundCheck {
        max_excess,
        scale: (4.0 * d).powi(order as i32) * n + boundary,
        boundary,
        nodes: grid.node_count(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecayRow {
    pub size: usize,
    pub omega_size: usize,
    /// min over unit f on the box of ‖(M − λ) f‖.
    pub residual: f64,
}

/// Smallest residual ‖(M − λ)f‖ over unit f on the boxes {0..s−1}^d.
///
/// A demonstration table only: there is no finite-size criterion for the
/// absence of ℓ² eigenfunctions on ℤ^d.
pub fn no_l2_eigenfunction_demo(d: usize, order: usize, lam: f64, box_sizes: &[usize]) -> Result<Vec<DecayRow>> {
    if lam <= 0.0 {
        return Err(Error::InvalidArgument(format!("λ must be positive, got {lam}")));
    }
    box_sizes
        .iter()
        .map(|&size| {
            if size == 0 {
                return Err(Error::InvalidArgument("box size must be at least 1".into()));
            }
            let domain = LatticeDomain::cube(d, size as i64 - 1)?;
            let op = PolyLaplaceOperator::assemble(&domain, order)?;
            let n = op.n();
            let shifted = Matrix::from_fn(n, |i, j| op.matrix()[(i, j)] - if i == j { lam } else { 0.0 });
            let squared = shifted.matmul(&shifted);
            let smallest = eigen_sym(&squared, false)?.eigenvalues[0];
            Ok(DecayRow { size, omega_size: n, residual: smallest.max(0.0).sqrt() })
        })
        .collect()
}
