//! Closed-form bounds on sums of Dirichlet poly-Laplace eigenvalues over
//! lattice domains, and the comparison between orders l and 2l.
//!
//! For Ω ⊂ ℤ^d with |Ω| = n and q = k/(V_d n):
//!
//! * upper, averaged:  (1/k) Σ_{j≤k} λ_j ≤ (2π)^{2l} d/(d+2l) q^{2l/d} + |∂^lΩ|/n,
//!   for k ≤ min{1, V_d/2^d} n;
//! * upper, next:      λ_{k+1} ≤ (2π)^{2l} d 2^{(d+2l)/d}/(d+2l) q^{2l/d} + 2|∂^lΩ|/n,
//!   for k ≤ min{1, V_d/2^{d+1}} n;
//! * lower, averaged:  (1/k) Σ_{j≤k} λ_j ≥ Σ_m C(l,m)(−1/12)^m (2π)^{2(l+m)} d/(d+2(l+m)) q^{2(l+m)/d},
//!   for k ≤ min{1, (√6/2π)^d V_d} n.

use std::f64::consts::PI;

use serde::Serialize;

use crate::eigen::{eigen_sym, partial_sums};
use crate::error::Result;
use crate::lattice::{edge_counts, DirichletDomain, LatticeDomain, Region};
use crate::matrix::CompensatedSum;
use crate::operator::{boundary_measure, BoundaryMeasure, PolyLaplaceOperator};
use crate::report::{csv_cells_flag, csv_cells_real, CsvTable};

/// Relative slack allowed when comparing eigenvalue data against a bound.
pub const BOUND_SLACK: f64 = 1e-9;

/// Volume of the unit ball in ℝ^d, via V_d = V_{d−2}·2π/d.
pub fn unit_ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(d - 2) * 2.0 * PI / d as f64,
    }
}

/// Row l of Pascal's triangle.
pub fn binomial(l: usize) -> Vec<u128> {
    let mut row = vec![1u128];
    for _ in 0..l {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

fn within(k: usize, fraction: f64, n: usize) -> bool {
    k >= 1 && k as f64 <= fraction.min(1.0) * n as f64
}

pub fn upper_mean_valid(d: usize, k: usize, n: usize) -> bool {
    within(k, unit_ball_volume(d) / 2f64.powi(d as i32), n)
}

pub fn upper_next_valid(d: usize, k: usize, n: usize) -> bool {
    within(k, unit_ball_volume(d) / 2f64.powi(d as i32 + 1), n)
}

pub fn lower_mean_valid(d: usize, k: usize, n: usize) -> bool {
    within(k, (6f64.sqrt() / (2.0 * PI)).powi(d as i32) * unit_ball_volume(d), n)
}

fn weyl_term(d: usize, power: usize, k: usize, n: usize) -> f64 {
    let q = k as f64 / (unit_ball_volume(d) * n as f64);
    let df = d as f64;
    (2.0 * PI).powi(power as i32) * df / (df + power as f64) * q.powf(power as f64 / df)
}

/// Averaged upper bound; `None` outside its range of k.
pub fn upper_bound_mean(d: usize, l: usize, k: usize, n: usize, boundary: f64) -> Option<f64> {
    upper_mean_valid(d, k, n).then(|| weyl_term(d, 2 * l, k, n) + boundary / n as f64)
}

/// Upper bound on λ_{k+1}; `None` outside its range of k.
pub fn upper_bound_next(d: usize, l: usize, k: usize, n: usize, boundary: f64) -> Option<f64> {
    upper_next_valid(d, k, n).then(|| {
        let df = d as f64;
        let doubling = 2f64.powf((df + 2.0 * l as f64) / df);
        doubling * weyl_term(d, 2 * l, k, n) + 2.0 * boundary / n as f64
    })
}

/// Averaged lower bound; `None` outside its range of k.
pub fn lower_bound_mean(d: usize, l: usize, k: usize, n: usize) -> Option<f64> {
    if !lower_mean_valid(d, k, n) {
        return None;
    }
    let mut sum = CompensatedSum::default();
    for (m, c) in binomial(l).into_iter().enumerate() {
        sum.add(c as f64 * (-1.0 / 12.0f64).powi(m as i32) * weyl_term(d, 2 * (l + m), k, n));
    }
    let value = sum.value();
    assert!(value > 0.0, "lower bound must be positive on its range (d={d}, l={l}, k={k}, n={n})");
    Some(value)
}

/// |E(Ω, δΩ)|, which is exactly |∂¹Ω|.
pub fn refined_boundary_l1<R: Region>(region: &R) -> f64 {
    edge_counts(region).e1 as f64
}

/// 4dE₁ + (E₁ + 2E₂ + E₃)·N + E₃E₁ with N = max over x ∈ δΩ of 2·|{y ∈ Ω : y ∼ x}|.
pub fn refined_boundary_l2(domain: &LatticeDomain) -> f64 {
    let counts = edge_counts(domain);
    let g = domain.padded(1);
    let normal = g
        .boundary()
        .map(|x| 2 * g.neighbors[x].iter().filter(|&&y| y < g.omega_size).count())
        .max()
        .unwrap_or(0);
    let (e1, e2, e3) = (counts.e1 as f64, counts.e2 as f64, counts.e3 as f64);
    4.0 * domain.dim() as f64 * e1 + (e1 + 2.0 * e2 + e3) * normal as f64 + e3 * e1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub upper_mean: Option<bool>,
    pub upper_next: Option<bool>,
    pub lower_mean: Option<bool>,
}

impl Verdicts {
    pub fn all_pass(&self) -> bool {
        [self.upper_mean, self.upper_next, self.lower_mean].iter().all(|v| v.unwrap_or(true))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsRow {
    pub k: usize,
    /// λ_k
    pub eig: f64,
    pub mean_eigs: f64,
    pub upper_mean: Option<f64>,
    pub next_eig: Option<f64>,
    pub upper_next: Option<f64>,
    pub lower_mean: Option<f64>,
    pub verdicts: Verdicts,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub d: usize,
    pub l: usize,
    pub omega_size: usize,
    pub boundary: BoundaryMeasure,
    pub rows: Vec<BoundsRow>,
}

impl BoundsReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.verdicts.all_pass())
    }

    /// Number of individual inequalities that were checked.
    pub fn checks(&self) -> usize {
        self.rows
            .iter()
            .map(|r| {
                [r.verdicts.upper_mean, r.verdicts.upper_next, r.verdicts.lower_mean]
                    .iter()
                    .filter(|v| v.is_some())
                    .count()
            })
            .sum()
    }
}

fn at_most(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + BOUND_SLACK * rhs.abs()
}

/// Assembles the order-l operator, solves it and checks every applicable bound
/// for k = 1..=min(k_max, |Ω|).
pub fn verify_bounds(domain: &LatticeDomain, l: usize, k_max: usize) -> Result<BoundsReport> {
    let n = domain.len();
    let d = domain.dim();
    let op = PolyLaplaceOperator::assemble(domain, l)?;
    let spectrum = eigen_sym(op.matrix(), false)?;
    let boundary = boundary_measure(domain, l)?;
    let k_top = k_max.min(n);
    let sums = partial_sums(&spectrum, k_top)?;
    let rows = (1..=k_top)
        .map(|k| {
            let mean_eigs = sums[k - 1] / k as f64;
            let next_eig = spectrum.eigenvalues.get(k).copied();
            let upper_mean = upper_bound_mean(d, l, k, n, boundary.exact);
            // the next-eigenvalue bound is vacuous when k = n
            let upper_next = next_eig.and(upper_bound_next(d, l, k, n, boundary.exact));
            let lower_mean = lower_bound_mean(d, l, k, n);
            let verdicts = Verdicts {
                upper_mean: upper_mean.map(|b| at_most(mean_eigs, b)),
                upper_next: upper_next.zip(next_eig).map(|(b, e)| at_most(e, b)),
                lower_mean: lower_mean.map(|b| at_most(b, mean_eigs)),
            };
            BoundsRow {
                k,
                eig: spectrum.eigenvalues[k - 1],
                mean_eigs,
                upper_mean,
                next_eig,
                upper_next,
                lower_mean,
                verdicts,
            }
        })
        .collect();
    Ok(BoundsReport { d, l, omega_size: n, boundary, rows })
}

impl CsvTable for BoundsReport {
    fn header(&self) -> Vec<&'static str> {
        vec![
            "k",
            "eig",
            "mean_eigs",
            "upper_mean",
            "next_eig",
            "upper_next",
            "lower_mean",
            "upper_mean_ok",
            "upper_next_ok",
            "lower_mean_ok",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                let mut cells = vec![r.k.to_string()];
                cells.extend(csv_cells_real(&[
                    Some(r.eig),
                    Some(r.mean_eigs),
                    r.upper_mean,
                    r.next_eig,
                    r.upper_next,
                    r.lower_mean,
                ]));
                cells.extend(csv_cells_flag(&[r.verdicts.upper_mean, r.verdicts.upper_next, r.verdicts.lower_mean]));
                cells
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderRow {
    pub k: usize,
    pub lam_l_sq: f64,
    pub lam_2l: f64,
    pub gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderComparison {
    pub l: usize,
    /// Largest entry of the order-2l operator, the absolute scale of the gaps.
    pub scale: f64,
    pub rows: Vec<OrderRow>,
}

impl OrderComparison {
    /// (λ_k^l)² ≤ λ_k^{2l} for every row, up to `rel`·scale.
    pub fn holds(&self, rel: f64) -> bool {
        self.rows.iter().all(|r| r.gap >= -rel * self.scale)
    }

    /// Every gap exceeds `rel`·λ_k^{2l}.
    pub fn strict(&self, rel: f64) -> bool {
        self.rows.iter().all(|r| r.gap > rel * r.lam_2l)
    }
}

/// λ_k^l squared against λ_k^{2l} for k = 1..=min(k_max, |Ω|).
pub fn compare_orders(domain: &(impl DirichletDomain + ?Sized), l: usize, k_max: usize) -> Result<OrderComparison> {
    let solve = |order: usize| -> Result<(Vec<f64>, f64)> {
        let op = PolyLaplaceOperator::assemble(domain, order)?;
        Ok((eigen_sym(op.matrix(), false)?.eigenvalues, op.matrix().max_abs()))
    };
    let (low, high) = rayon::join(|| solve(l), || solve(2 * l));
    let ((low, _), (high, scale)) = (low?, high?);
    let rows = low
        .iter()
        .zip(&high)
        .take(k_max)
        .enumerate()
        .map(|(i, (&a, &b))| OrderRow { k: i + 1, lam_l_sq: a * a, lam_2l: b, gap: b - a * a })
        .collect();
    Ok(OrderComparison { l, scale, rows })
}

impl CsvTable for OrderComparison {
    fn header(&self) -> Vec<&'static str> {
        vec!["k", "lam_l_sq", "lam_2l", "gap"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                let mut cells = vec![r.k.to_string()];
                cells.extend(csv_cells_real(&[Some(r.lam_l_sq), Some(r.lam_2l), Some(r.gap)]));
                cells
            })
            .collect()
    }
}
