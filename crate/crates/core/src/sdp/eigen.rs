//! Cyclic Jacobi eigendecomposition and PSD projection.

use super::SymmetricMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct Eigen {
    /// Descending.
    pub values: Vec<f64>,
    /// Row-major `n × n`; column `k` is the eigenvector for `values[k]`.
    pub vectors: Vec<f64>,
    pub order: usize,
    pub sweeps: usize,
}

impl Eigen {
    #[inline]
    pub fn vector_entry(&self, i: usize, k: usize) -> f64 {
        self.vectors[i * self.order + k]
    }

    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// `Σ_k f(λ_k) v_k v_kᵀ` over the components where `f` is non-zero.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> SymmetricMatrix {
        let n = self.order;
        let scaled: Vec<(usize, f64)> = self
            .values
            .iter()
            .enumerate()
            .map(|(k, &l)| (k, f(l)))
            .filter(|&(_, s)| s != 0.0)
            .collect();
        SymmetricMatrix::from_fn(n, |i, j| {
            scaled
                .iter()
                .map(|&(k, s)| s * self.vector_entry(i, k) * self.vector_entry(j, k))
                .sum()
        })
    }
}

pub fn symmetric_eigendecomposition(m: &SymmetricMatrix) -> Result<Eigen> {
    let n = m.order();
    let mut a = m.as_slice().to_vec();
    let mut v = identity(n);
    let sweeps = jacobi(&mut a, &mut v, n)?;
    Ok(sorted(&a, &v, n, sweeps))
}

/// Same decomposition, started from an orthonormal `basis` (row-major,
/// columns are basis vectors) that nearly diagonalises `m`, such as the
/// eigenvectors of a neighbouring matrix. Fewer sweeps are needed.
pub fn symmetric_eigendecomposition_from(m: &SymmetricMatrix, basis: &[f64]) -> Result<Eigen> {
    let n = m.order();
    assert_eq!(basis.len(), n * n);
    let mb = matmul(m.as_slice(), basis, n);
    // Bᵀ (M B)
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let s: f64 = (0..n).map(|r| basis[r * n + i] * mb[r * n + j]).sum();
            a[i * n + j] = s;
            a[j * n + i] = s;
        }
    }
    let mut w = identity(n);
    let sweeps = jacobi(&mut a, &mut w, n)?;
    let v = matmul(basis, &w, n);
    Ok(sorted(&a, &v, n, sweeps))
}

fn identity(n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    v
}

fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut c = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}

/// Cyclic Jacobi on `a` in place, accumulating rotations into `v`.
fn jacobi(a: &mut [f64], v: &mut [f64], n: usize) -> Result<usize> {
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut sweeps = 0;
    loop {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        if off.sqrt() <= f64::EPSILON * scale || off == 0.0 {
            return Ok(sweeps);
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::EigenNoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[p * n + p], a[q * n + q]);
                // after a few sweeps, negligible entries are zeroed outright
                if sweeps > 4 && apq.abs() < f64::EPSILON * 1e-2 * (app.abs() + aqq.abs()) {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let nrp = c * arp - s * arq;
                    let nrq = s * arp + c * arq;
                    a[r * n + p] = nrp;
                    a[p * n + r] = nrp;
                    a[r * n + q] = nrq;
                    a[q * n + r] = nrq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
    }
}

fn sorted(a: &[f64], v: &[f64], n: usize, sweeps: usize) -> Eigen {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&x, &y| a[y * n + y].total_cmp(&a[x * n + x]).then(x.cmp(&y)));
    let values = idx.iter().map(|&k| a[k * n + k]).collect();
    let mut vectors = vec![0.0; n * n];
    for (col, &k) in idx.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + col] = v[r * n + k];
        }
    }
    Eigen {
        values,
        vectors,
        order: n,
        sweeps,
    }
}

/// Nearest PSD matrix in Frobenius norm: negative eigenvalues clipped to zero.
pub fn psd_project(m: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    Ok(symmetric_eigendecomposition(m)?.reconstruct_with(|l| l.max(0.0)))
}
