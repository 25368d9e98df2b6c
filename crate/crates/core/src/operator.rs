//! The Dirichlet poly-Laplace operator (−1)^l Δ_Ω^{l,D}.
//!
//! A function on Ω is extended by zero to Ω ∪ δ₁Ω ∪ … ∪ δ_lΩ, the graph
//! Laplacian is applied l times, and the result is restricted back to Ω.
//! Since Δ^m of a point mass at y is supported in B(y, m), padding by l
//! layers loses nothing for m ≤ l.

use std::collections::BTreeMap;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::binomial;
use crate::error::{Error, Result};
use crate::lattice::{count_paths, DirichletDomain, Graph, PaddedGraph};
use crate::matrix::Matrix;
use crate::report::fmt_real;

/// Largest |Ω| for which a dense operator is assembled.
pub const MAX_OPERATOR_SIZE: usize = 10_000;

/// Relative symmetry defect tolerated on assembly.
pub const SYMMETRY_TOLERANCE: f64 = 1e-13;

/// Δf on a finitely supported function, evaluated on supp f and its neighbours.
pub fn apply_laplacian<G: Graph>(graph: &G, f: &BTreeMap<G::Vertex, f64>) -> BTreeMap<G::Vertex, f64> {
    let mut out = BTreeMap::new();
    let value = |v: &G::Vertex| f.get(v).copied().unwrap_or(0.0);
    for x in f.keys() {
        for v in std::iter::once(x.clone()).chain(graph.neighbors(x)) {
            if out.contains_key(&v) {
                continue;
            }
            let nbrs = graph.neighbors(&v);
            let lap = nbrs.iter().map(|w| value(w) - value(&v)).sum();
            out.insert(v, lap);
        }
    }
    out
}

/// (−Δ)u on the padded set, treating u as zero outside it.
pub fn neg_laplacian_padded(g: &PaddedGraph, u: &[f64]) -> Vec<f64> {
    (0..g.len())
        .map(|v| g.degree[v] as f64 * u[v] - g.neighbors[v].iter().map(|&w| u[w]).sum::<f64>())
        .collect()
}

/// Zero extension of a function on Ω to the padded set.
pub fn zero_extend(g: &PaddedGraph, f: &[f64]) -> Vec<f64> {
    assert_eq!(f.len(), g.omega_size, "function must live on Ω");
    let mut out = vec![0.0; g.len()];
    out[..g.omega_size].copy_from_slice(f);
    out
}

/// (−Δ)^l applied to the zero extension of the indicator of Ω-vertex `j`.
fn power_column(g: &PaddedGraph, j: usize, order: usize) -> Vec<f64> {
    let mut u = vec![0.0; g.len()];
    u[j] = 1.0;
    for _ in 0..order {
        u = neg_laplacian_padded(g, &u);
    }
    u
}

#[derive(Clone, Debug)]
pub struct PolyLaplaceOperator {
    order: usize,
    matrix: Matrix,
}

impl PolyLaplaceOperator {
    pub fn assemble(domain: &(impl DirichletDomain + ?Sized), order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("operator order must be at least 1".into()));
        }
        let n = domain.omega_size();
        if n > MAX_OPERATOR_SIZE {
            return Err(Error::CapExceeded { what: "operator", size: n, cap: MAX_OPERATOR_SIZE });
        }
        let g = domain.padded(order);
        let columns: Vec<Vec<f64>> = (0..n).into_par_iter().map(|j| power_column(&g, j, order)).collect();
        let mut matrix = Matrix::zeros(n);
        for (j, col) in columns.iter().enumerate() {
            for i in 0..n {
                matrix[(i, j)] = col[i];
            }
        }
        let defect = matrix.symmetry_defect();
        let tolerance = SYMMETRY_TOLERANCE * matrix.max_abs();
        if defect > tolerance {
            return Err(Error::SymmetryDefect { defect, tolerance });
        }
        matrix.symmetrize();
        Ok(PolyLaplaceOperator { order, matrix })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        self.matrix.matvec(f)
    }

    /// ⟨Mf, f⟩ for real f.
    pub fn quadratic_form(&self, f: &[f64]) -> f64 {
        crate::matrix::dot(&self.apply(f), f)
    }

    /// ⟨Mf, f⟩ = Σ (Mf)(x) conj f(x); the imaginary part vanishes up to rounding.
    pub fn quadratic_form_complex(&self, f: &[Complex64]) -> f64 {
        let re: Vec<f64> = f.iter().map(|z| z.re).collect();
        let im: Vec<f64> = f.iter().map(|z| z.im).collect();
        self.quadratic_form(&re) + self.quadratic_form(&im)
    }

    /// Symmetric coordinate dump: header `n n nnz`, then 1-based `i j value`
    /// for the lower triangle.
    pub fn write_matrix_market(&self, mut w: impl Write) -> Result<()> {
        let n = self.n();
        let entries: Vec<(usize, usize, f64)> = (0..n)
            .flat_map(|i| (0..=i).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let v = self.matrix[(i, j)];
                (v != 0.0).then_some((i, j, v))
            })
            .collect();
        writeln!(w, "%%MatrixMarket matrix coordinate real symmetric")?;
        writeln!(w, "{n} {n} {}", entries.len())?;
        for (i, j, v) in entries {
            writeln!(w, "{} {} {}", i + 1, j + 1, fmt_real(v))?;
        }
        Ok(())
    }
}

/// a^l_{xy} = Σ_m C(l,m)(−1)^m deg^{l−m} p_m(x,y), valid on regular graphs.
pub fn coeff_axy<G: Graph>(graph: &G, x: &G::Vertex, y: &G::Vertex, order: usize) -> Result<f64> {
    let deg = graph.regular_degree().ok_or(Error::NotRegular)? as i128;
    let binom = binomial(order);
    let mut total: i128 = 0;
    for (m, c) in binom.iter().enumerate() {
        let paths = count_paths(graph, x, y, m) as i128;
        let sign = if m % 2 == 0 { 1 } else { -1 };
        total += sign * (*c as i128) * deg.pow((order - m) as u32) * paths;
    }
    Ok(total as f64)
}

/// |∂^lΩ| and its crude bound (2·maxdeg)^l Σ|δ_iΩ| (= 4^l d^l Σ|δ_iΩ| on ℤ^d).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryMeasure {
    pub l: usize,
    pub exact: f64,
    pub crude: f64,
}

pub fn boundary_measure(domain: &(impl DirichletDomain + ?Sized), order: usize) -> Result<BoundaryMeasure> {
    if order == 0 {
        return Err(Error::InvalidArgument("operator order must be at least 1".into()));
    }
    let g = domain.padded(order);
    let exact: f64 = (0..g.omega_size)
        .into_par_iter()
        .map(|y| {
            let col = power_column(&g, y, order);
            g.boundary().map(|x| col[x].abs()).sum::<f64>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    let layer_total: usize = g.layer_sizes.iter().sum();
    let crude = ((2 * domain.max_degree()) as f64).powi(order as i32) * layer_total as f64;
    Ok(BoundaryMeasure { l: order, exact, crude })
}
