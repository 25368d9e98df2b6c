//! Dense symmetric eigensolver.
//!
//! Householder reduction to tridiagonal form followed by implicit QL sweeps
//! with a Wilkinson-type shift. Eigenvalues come back ascending; repeated
//! eigenvalues are reported with multiplicity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{dot, CompensatedSum, Matrix};

/// Iteration cap per eigenvalue in the QL phase.
pub const MAX_SWEEPS: usize = 50;

#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Row `k` holds the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    pub residuals: Option<Vec<f64>>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn residual_max(&self) -> Option<f64> {
        self.residuals.as_ref().map(|r| r.iter().fold(0.0, |m: f64, x| m.max(*x)))
    }

    pub fn to_json(&self) -> SpectrumJson<'_> {
        SpectrumJson { eigenvalues: &self.eigenvalues, residual_max: self.residual_max() }
    }
}

/// Serialized form: `{"eigenvalues":[...], "residual_max":x}`.
#[derive(Serialize)]
pub struct SpectrumJson<'a> {
    pub eigenvalues: &'a [f64],
    pub residual_max: Option<f64>,
}

/// All eigenvalues (and optionally eigenvectors) of a symmetric matrix.
pub fn eigen_sym(matrix: &Matrix, want_vectors: bool) -> Result<Spectrum> {
    let n = matrix.n();
    if n == 0 {
        return Ok(Spectrum {
            eigenvalues: vec![],
            eigenvectors: want_vectors.then(Vec::new),
            residuals: want_vectors.then(Vec::new),
        });
    }
    // The reduction runs on the transpose so that the inner loops walk
    // contiguous memory; for symmetric input that is the matrix itself.
    let mut w = matrix.as_slice().to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    householder_tridiagonalize(&mut w, n, &mut d, &mut e, want_vectors);
    let mut vecs = want_vectors.then_some(w);
    implicit_ql(&mut d, &mut e, vecs.as_deref_mut(), n)
        .map_err(|()| Error::NoConvergence { fingerprint: matrix.fingerprint(), n })?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let eigenvectors = vecs.map(|z| order.iter().map(|&i| z[i * n..(i + 1) * n].to_vec()).collect::<Vec<_>>());
    let residuals = eigenvectors.as_ref().map(|vs| {
        vs.iter()
            .zip(&eigenvalues)
            .map(|(v, &lam)| {
                let mv = matrix.matvec(v);
                mv.iter().zip(v).map(|(a, b)| (a - lam * b).powi(2)).sum::<f64>().sqrt()
            })
            .collect()
    });
    Ok(Spectrum { eigenvalues, eigenvectors, residuals })
}

// `w` holds Vᵀ in row-major order: V[a][b] lives at w[b * n + a].
fn householder_tridiagonalize(w: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64], accumulate: bool) {
    let at = |a: usize, b: usize| b * n + a;
    for j in 0..n {
        d[j] = w[at(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in &d[..i] {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = w[at(i - 1, j)];
                w[at(i, j)] = 0.0;
                w[at(j, i)] = 0.0;
            }
        } else {
            for dk in &mut d[..i] {
                *dk /= scale;
                h += *dk * *dk;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].fill(0.0);
            for j in 0..i {
                let f = d[j];
                w[at(j, i)] = f;
                let col = &w[j * n..j * n + i];
                let mut g = e[j] + col[j] * f;
                for k in j + 1..i {
                    g += col[k] * d[k];
                    e[k] += col[k] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let (f, g) = (d[j], e[j]);
                let col = &mut w[j * n..j * n + i];
                for k in j..i {
                    col[k] -= f * e[k] + g * d[k];
                }
                d[j] = w[at(i - 1, j)];
                w[at(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }

    if !accumulate {
        for j in 0..n {
            d[j] = w[at(j, j)];
        }
        e[0] = 0.0;
        return;
    }
    for i in 0..n - 1 {
        w[at(n - 1, i)] = w[at(i, i)];
        w[at(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = w[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let g: f64 = (0..=i).map(|k| w[at(k, i + 1)] * w[at(k, j)]).sum();
                for k in 0..=i {
                    w[at(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            w[at(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = w[at(n - 1, j)];
        w[at(n - 1, j)] = 0.0;
    }
    w[at(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e[1..]). Rows of `z` (eigenvector
// storage, row k = vector k) are rotated alongside.
fn implicit_ql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>, n: usize) -> std::result::Result<(), ()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= f64::MIN_POSITIVE {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(());
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    let (lo, hi) = z.split_at_mut((i + 1) * n);
                    let zi = &mut lo[i * n..];
                    let zi1 = &mut hi[..n];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let f = *b;
                        *b = s * *a + c * f;
                        *a = c * *a - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Slack of γ_{k+1}⟨g,g⟩ ≤ ⟨g,Lg⟩ + Σ_{j≤k}(γ_{k+1} − γ_j)|⟨g,f_j⟩|², i.e. RHS − LHS.
///
/// `k` runs from 1 to n; γ_{n+1} is taken as 0.
pub fn rayleigh_ritz_check(matrix: &Matrix, g: &[f64], k: usize, spectrum: &Spectrum) -> Result<f64> {
    let vecs = spectrum.eigenvectors.as_ref().ok_or(Error::MissingEigenvectors)?;
    let n = spectrum.len();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..={n}")));
    }
    let gamma_next = if k < n { spectrum.eigenvalues[k] } else { 0.0 };
    let mut rhs = CompensatedSum::default();
    rhs.add(dot(g, &matrix.matvec(g)));
    for (gamma, f) in spectrum.eigenvalues[..k].iter().zip(vecs) {
        rhs.add((gamma_next - gamma) * dot(g, f).powi(2));
    }
    Ok(rhs.value() - gamma_next * dot(g, g))
}

/// Prefix sums Σ_{j≤k} λ_j for k = 1..=k_max, compensated.
pub fn partial_sums(spectrum: &Spectrum, k_max: usize) -> Result<Vec<f64>> {
    if k_max > spectrum.len() {
        return Err(Error::InvalidArgument(format!("k_max = {k_max} exceeds n = {}", spectrum.len())));
    }
    let mut acc = CompensatedSum::default();
    Ok(spectrum.eigenvalues[..k_max]
        .iter()
        .map(|&x| {
            acc.add(x);
            acc.value()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use approx::assert_abs_diff_eq;

    use super::*;

    fn path_laplacian(m: usize) -> Matrix {
        Matrix::from_fn(m, |i, j| match i.abs_diff(j) {
            0 => 2.0,
            1 => -1.0,
            _ => 0.0,
        })
    }

    #[test]
    fn two_by_two() {
        let s = eigen_sym(&Matrix::from_rows(&[vec![2.0, -1.0], vec![-1.0, 2.0]]), true).unwrap();
        assert_abs_diff_eq!(s.eigenvalues[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.eigenvalues[1], 3.0, epsilon = 1e-14);
        assert!(s.residual_max().unwrap() < 1e-14);
    }

    #[test]
    fn identity_and_degenerate() {
        let s = eigen_sym(&Matrix::identity(5), false).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0; 5]);
        assert!(s.eigenvectors.is_none());
        let one = eigen_sym(&Matrix::from_rows(&[vec![7.0]]), true).unwrap();
        assert_eq!(one.eigenvalues, vec![7.0]);
        assert_eq!(one.eigenvectors.unwrap(), vec![vec![1.0]]);
        assert!(eigen_sym(&Matrix::zeros(0), true).unwrap().is_empty());
        assert_eq!(eigen_sym(&Matrix::zeros(4), true).unwrap().eigenvalues, vec![0.0; 4]);
    }

    #[test]
    fn path_closed_form() {
        for m in [1, 2, 3, 10, 57, 200] {
            let s = eigen_sym(&path_laplacian(m), m <= 57).unwrap();
            for (j, lam) in s.eigenvalues.iter().enumerate() {
                let exact = 2.0 - 2.0 * ((j + 1) as f64 * PI / (m + 1) as f64).cos();
                assert_abs_diff_eq!(*lam, exact, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn vectors_match_values_only_run() {
        let a = Matrix::from_fn(9, |i, j| 1.0 / (1.0 + i as f64 + j as f64));
        let with = eigen_sym(&a, true).unwrap();
        let without = eigen_sym(&a, false).unwrap();
        for (x, y) in with.eigenvalues.iter().zip(&without.eigenvalues) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-13);
        }
        let vs = with.eigenvectors.as_ref().unwrap();
        for i in 0..9 {
            for j in 0..9 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(dot(&vs[i], &vs[j]), want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn deterministic() {
        let a = Matrix::from_fn(30, |i, j| ((i * 7 + j * 7) % 11) as f64 - 5.0);
        let x = eigen_sym(&a, true).unwrap();
        let y = eigen_sym(&a, true).unwrap();
        assert_eq!(x.eigenvalues, y.eigenvalues);
        assert_eq!(x.eigenvectors, y.eigenvectors);
    }

    #[test]
    fn partial_sum_examples() {
        let s = Spectrum { eigenvalues: vec![1.0, 3.0], eigenvectors: None, residuals: None };
        assert_eq!(partial_sums(&s, 2).unwrap(), vec![1.0, 4.0]);
        let ones = Spectrum { eigenvalues: vec![1.0; 5], eigenvectors: None, residuals: None };
        assert_eq!(partial_sums(&ones, 5).unwrap(), vec![1.0, 2.0, 3.0, 4.0, 5.0]);
        assert!(partial_sums(&ones, 6).is_err());
        let path = eigen_sym(&path_laplacian(10), false).unwrap();
        assert_abs_diff_eq!(partial_sums(&path, 10).unwrap()[9], 20.0, epsilon = 1e-12);
    }

    #[test]
    fn rayleigh_ritz_equality_cases() {
        let a = path_laplacian(6);
        let s = eigen_sym(&a, true).unwrap();
        let vs = s.eigenvectors.clone().unwrap();
        for k in 1..6 {
            // the next eigenvector saturates the inequality
            assert_abs_diff_eq!(rayleigh_ritz_check(&a, &vs[k], k, &s).unwrap(), 0.0, epsilon = 1e-12);
            // so does the first one, whose deficit is absorbed by the sum
            assert_abs_diff_eq!(rayleigh_ritz_check(&a, &vs[0], k, &s).unwrap(), 0.0, epsilon = 1e-12);
        }
        let g = [1.0, -2.0, 0.5, 0.0, 3.0, 1.0];
        assert_abs_diff_eq!(rayleigh_ritz_check(&a, &g, 6, &s).unwrap(), 0.0, epsilon = 1e-11);
        let bare = eigen_sym(&a, false).unwrap();
        assert!(matches!(rayleigh_ritz_check(&a, &g, 1, &bare), Err(Error::MissingEigenvectors)));
        assert!(rayleigh_ritz_check(&a, &g, 0, &s).is_err());
    }
}
