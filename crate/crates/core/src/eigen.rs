//! Dense symmetric matrices and a self-contained eigenvalue oracle.
//!
//! The oracle is a cyclic Jacobi iteration: sweep all off-diagonal entries,
//! rotate each one to zero, repeat until the off-diagonal Frobenius mass
//! falls below the requested tolerance. Quadratic convergence makes this
//! entirely adequate for the dimensions the size caps admit, and having no
//! dependency keeps it trustworthy as the reference every bound is tested
//! against. Eigenvalues only; no eigenvectors are accumulated.

use crate::graph::Graph;
use crate::{caps, Error, Result};

const MAX_SWEEPS: usize = 64;

/// Dense symmetric matrix, full row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(dim: usize) -> SymmetricMatrix {
        SymmetricMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> SymmetricMatrix {
        let mut m = SymmetricMatrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets entry (i, j) and its mirror.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.dim + j] = value;
        self.data[j * self.dim + i] = value;
    }

    /// Adds to entry (i, j) and its mirror (the diagonal once).
    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.dim + j] += value;
        if i != j {
            self.data[j * self.dim + i] += value;
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_diff(&self, other: &SymmetricMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_distance(&self, other: &SymmetricMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    fn off_diagonal_norm(data: &[f64], n: usize) -> f64 {
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let v = data[i * n + j];
                    sum += v * v;
                }
            }
        }
        sum.sqrt()
    }

    /// Eigenvalues in ascending order, computed to off-diagonal Frobenius
    /// mass below `tol`. Deterministic for a fixed input.
    pub fn eigenvalues(&self, tol: f64) -> Result<Spectrum> {
        if !(tol > 0.0) {
            return Err(Error::invalid("eigensolver tolerance must be positive"));
        }
        caps::guard(
            "dense eigensolve dimension",
            self.dim as u128,
            caps::current().matrix_dim,
        )?;
        let n = self.dim;
        if n == 0 {
            return Ok(Spectrum {
                eigenvalues: Vec::new(),
                tol,
            });
        }
        let mut a = self.data.clone();
        let mut residual = Self::off_diagonal_norm(&a, n);
        let mut sweeps = 0;
        while residual >= tol {
            if sweeps == MAX_SWEEPS {
                return Err(Error::NoConvergence { residual, sweeps });
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[p * n + q];
                    if apq == 0.0 {
                        continue;
                    }
                    let app = a[p * n + p];
                    let aqq = a[q * n + q];
                    let theta = (aqq - app) / (2.0 * apq);
                    // tan of the rotation angle, smaller root for stability
                    let t = if theta.abs() > 1e150 {
                        1.0 / (2.0 * theta)
                    } else {
                        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                    };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    a[p * n + p] = app - t * apq;
                    a[q * n + q] = aqq + t * apq;
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    for i in 0..n {
                        if i == p || i == q {
                            continue;
                        }
                        let aip = a[i * n + p];
                        let aiq = a[i * n + q];
                        a[i * n + p] = c * aip - s * aiq;
                        a[p * n + i] = a[i * n + p];
                        a[i * n + q] = s * aip + c * aiq;
                        a[q * n + i] = a[i * n + q];
                    }
                }
            }
            sweeps += 1;
            residual = Self::off_diagonal_norm(&a, n);
        }
        let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
        eigenvalues.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
        Ok(Spectrum { eigenvalues, tol })
    }
}

/// General matrix product, for checking projector identities. The result is
/// returned row-major because a product of symmetric matrices need not be
/// symmetric.
pub fn matmul(a: &SymmetricMatrix, b: &SymmetricMatrix) -> Vec<f64> {
    assert_eq!(a.dim, b.dim, "dimension mismatch");
    let n = a.dim;
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a.data[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b.data[k * n + j];
            }
        }
    }
    out
}

/// Sorted eigenvalues plus the tolerance they were computed to.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    tol: f64,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// The j-th smallest eigenvalue, 0-indexed.
    pub fn lambda(&self, j: usize) -> f64 {
        self.eigenvalues[j]
    }

    /// Eigenvalues clustered into (value, multiplicity) pairs: consecutive
    /// sorted values within `window` of the cluster head join it.
    pub fn clustered(&self, window: f64) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &v in &self.eigenvalues {
            match out.last_mut() {
                Some((head, count)) if (v - *head).abs() <= window => *count += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }

    /// Count of eigenvalues below `threshold`; with a small threshold, the
    /// kernel dimension.
    pub fn count_below(&self, threshold: f64) -> usize {
        self.eigenvalues.iter().filter(|&&v| v < threshold).count()
    }
}

/// First index where two sorted spectra disagree beyond `tol`, with the
/// offending values. `None` means they match as multisets to that tolerance.
pub fn spectra_mismatch(a: &[f64], b: &[f64], tol: f64) -> Option<(usize, f64, f64)> {
    if a.len() != b.len() {
        return Some((a.len().min(b.len()), f64::NAN, f64::NAN));
    }
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        if (x - y).abs() > tol {
            return Some((i, *x, *y));
        }
    }
    None
}

/// Combinatorial Laplacian: degree diagonal minus adjacency.
pub fn laplacian_matrix(g: &Graph) -> SymmetricMatrix {
    let mut m = SymmetricMatrix::zeros(g.n());
    for v in 0..g.n() {
        m.set(v, v, g.degree(v) as f64);
    }
    for &(u, v) in g.edges() {
        m.set(u, v, -1.0);
    }
    m
}

/// Degree-normalized Laplacian D^{-1/2} L D^{-1/2}. Every vertex must have
/// positive degree.
pub fn normalized_laplacian(g: &Graph) -> Result<SymmetricMatrix> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex { v: v + 1 });
    }
    let inv_sqrt: Vec<f64> = (0..g.n())
        .map(|v| 1.0 / (g.degree(v) as f64).sqrt())
        .collect();
    let mut m = SymmetricMatrix::zeros(g.n());
    for v in 0..g.n() {
        m.set(v, v, 1.0);
    }
    for &(u, v) in g.edges() {
        m.set(u, v, -inv_sqrt[u] * inv_sqrt[v]);
    }
    Ok(m)
}
