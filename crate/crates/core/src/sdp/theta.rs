//! Lovász theta by ADMM.
//!
//! Primal: maximise `⟨W, X⟩` subject to `tr X = 1`, `X_ij = 0` on edges and
//! `X ⪰ 0`, with `W_ij = √(w_i w_j)` (all ones when unweighted). The splitting
//! alternates an exact projection onto the affine constraints, a projection
//! onto the PSD cone and a scaled multiplier update.
//!
//! Dual: for any edge-supported `Y`, `A = W + Y` satisfies `⟨W, X⟩ = ⟨A, X⟩ ≤
//! λ_max(A)` on the feasible set, so `λ_max(A)` is an upper bound. `A` is read
//! off the multiplier on the edge entries.

use serde::Serialize;

use super::eigen::{symmetric_eigendecomposition, symmetric_eigendecomposition_from, Eigen};
use super::SymmetricMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::{guard, Limits};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdpOptions {
    pub rho: f64,
    /// Over-relaxation factor in (0, 2); 1 is plain ADMM.
    pub relaxation: f64,
    pub residual_tol: f64,
    pub gap_tol: f64,
    pub max_iterations: usize,
}

impl Default for SdpOptions {
    fn default() -> Self {
        Self {
            rho: 1.0,
            relaxation: 1.6,
            residual_tol: 1e-9,
            gap_tol: 1e-7,
            max_iterations: 200_000,
        }
    }
}

const BALANCE_RATIO: f64 = 10.0;
const BALANCE_EVERY: usize = 25;
const DUAL_EVERY: usize = 50;
/// Warm-started eigensolves restart cold this often to shed drift.
const COLD_EVERY: usize = 64;

#[derive(Debug, Clone, Serialize)]
pub struct SdpSolution {
    pub graph_fingerprint: String,
    pub weights: Option<Vec<f64>>,
    #[serde(skip)]
    pub primal_matrix: SymmetricMatrix,
    pub primal_value: f64,
    pub dual_value: f64,
    #[serde(skip)]
    pub dual_matrix: SymmetricMatrix,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub gap: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl SdpSolution {
    /// Midpoint of the primal and dual values.
    pub fn theta(&self) -> f64 {
        0.5 * (self.primal_value + self.dual_value)
    }

    /// Half the duality gap.
    pub fn uncertainty(&self) -> f64 {
        0.5 * self.gap.abs()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// Turns a non-converged solve into an error.
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::SdpNoConvergence {
                residual: self.primal_residual.max(self.dual_residual),
                gap: self.gap,
            })
        }
    }

    /// Structural checks on the primal matrix against `g`: PSD, unit trace,
    /// zero on edges, and the gap when converged.
    pub fn verify(&self, g: &Graph, gap_tol: f64) -> Result<()> {
        let x = &self.primal_matrix;
        let min_eig = symmetric_eigendecomposition(x)?.min();
        if min_eig < -1e-7 {
            return Err(Error::Representation(format!(
                "X has eigenvalue {min_eig:.3e}"
            )));
        }
        if (x.trace() - 1.0).abs() > 1e-8 {
            return Err(Error::Representation(format!("trace(X) = {}", x.trace())));
        }
        for (i, j) in g.edges() {
            if x.get(i, j).abs() > 1e-7 {
                return Err(Error::Representation(format!(
                    "X[{i}][{j}] = {:.3e} on an edge",
                    x.get(i, j)
                )));
            }
        }
        if self.converged && self.gap.abs() > gap_tol {
            return Err(Error::Representation(format!("gap {:.3e}", self.gap)));
        }
        Ok(())
    }
}

/// ϑ(G) or, with weights, ϑ(G, w).
pub fn lovasz_theta(g: &Graph, weights: Option<&[f64]>) -> Result<SdpSolution> {
    lovasz_theta_with(g, weights, &SdpOptions::default())
}

pub fn lovasz_theta_with(
    g: &Graph,
    weights: Option<&[f64]>,
    opts: &SdpOptions,
) -> Result<SdpSolution> {
    let n = g.vertex_count();
    guard("theta SDP", n, Limits::current().sdp)?;
    if let Some(w) = weights {
        if w.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: w.len(),
            });
        }
        if let Some((index, &value)) = w
            .iter()
            .enumerate()
            .find(|(_, v)| !(**v >= 0.0 && v.is_finite()))
        {
            return Err(Error::InvalidWeight { index, value });
        }
    }
    let sqrt_w: Vec<f64> = match weights {
        Some(w) => w.iter().map(|v| v.sqrt()).collect(),
        None => vec![1.0; n],
    };
    let mut cost = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            cost[i * n + j] = sqrt_w[i] * sqrt_w[j];
        }
    }
    let edges = g.edges();

    let mut rho = opts.rho;
    let mut x = vec![0.0; n * n];
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0 / n as f64;
    }
    let mut u = vec![0.0; n * n];
    let mut buf = vec![0.0; n * n];
    let mut relaxed = vec![0.0; n * n];
    let mut previous: Option<Eigen> = None;

    let mut primal_residual = f64::INFINITY;
    let mut dual_residual = f64::INFINITY;
    let mut primal_value = f64::NAN;
    let mut dual_value = f64::NAN;
    let mut dual_matrix = SymmetricMatrix::zeros(n);
    let mut converged = false;
    let mut iterations = 0;

    for k in 1..=opts.max_iterations {
        iterations = k;
        // X-step: argmin -⟨W,X⟩ + ρ/2 ‖X - Z + U‖² over the affine set
        for idx in 0..n * n {
            x[idx] = z[idx] - u[idx] + cost[idx] / rho;
        }
        project_affine(&mut x, n, &edges);

        // Z-step: PSD projection of the relaxed X + U
        let alpha = opts.relaxation;
        for idx in 0..n * n {
            relaxed[idx] = alpha * x[idx] + (1.0 - alpha) * z[idx];
            buf[idx] = relaxed[idx] + u[idx];
        }
        let target = SymmetricMatrix::from_full(n, &buf);
        let eig = match &previous {
            Some(prev) if k % COLD_EVERY != 0 => {
                symmetric_eigendecomposition_from(&target, &prev.vectors)?
            }
            _ => symmetric_eigendecomposition(&target)?,
        };
        let z_new = eig.reconstruct_with(|l| l.max(0.0));
        let z_new = z_new.as_slice();

        let mut r2 = 0.0;
        let mut s2 = 0.0;
        for idx in 0..n * n {
            let d = x[idx] - z_new[idx];
            r2 += d * d;
            let dz = z_new[idx] - z[idx];
            s2 += dz * dz;
            u[idx] += relaxed[idx] - z_new[idx];
            z[idx] = z_new[idx];
        }
        previous = Some(eig);
        primal_residual = r2.sqrt();
        dual_residual = rho * s2.sqrt();

        let small = primal_residual.max(dual_residual) <= opts.residual_tol;
        if small || k % DUAL_EVERY == 0 || k == opts.max_iterations {
            let a = dual_candidate(&cost, &u, rho, n, &edges);
            dual_value = symmetric_eigendecomposition(&a)?.max();
            dual_matrix = a;
            primal_value = (0..n * n).map(|idx| cost[idx] * x[idx]).sum();
            if small && (dual_value - primal_value).abs() <= opts.gap_tol {
                converged = true;
                break;
            }
        }

        if k % BALANCE_EVERY == 0 {
            if primal_residual > BALANCE_RATIO * dual_residual {
                rho *= 2.0;
                u.iter_mut().for_each(|v| *v /= 2.0);
            } else if dual_residual > BALANCE_RATIO * primal_residual {
                rho /= 2.0;
                u.iter_mut().for_each(|v| *v *= 2.0);
            }
        }
    }

    Ok(SdpSolution {
        graph_fingerprint: g.fingerprint(),
        weights: weights.map(<[f64]>::to_vec),
        primal_matrix: SymmetricMatrix::from_full(n, &x),
        primal_value,
        dual_value,
        dual_matrix,
        primal_residual,
        dual_residual,
        gap: dual_value - primal_value,
        iterations,
        converged,
    })
}

/// Zero the edge entries, then shift the diagonal to unit trace. The two
/// constraint families touch disjoint entries, so this is the exact
/// Euclidean projection.
fn project_affine(x: &mut [f64], n: usize, edges: &[(usize, usize)]) {
    for &(i, j) in edges {
        x[i * n + j] = 0.0;
        x[j * n + i] = 0.0;
    }
    let trace: f64 = (0..n).map(|i| x[i * n + i]).sum();
    let shift = (1.0 - trace) / n as f64;
    for i in 0..n {
        x[i * n + i] += shift;
    }
}

/// `W` off the edges, `ρU` on them.
fn dual_candidate(
    cost: &[f64],
    u: &[f64],
    rho: f64,
    n: usize,
    edges: &[(usize, usize)],
) -> SymmetricMatrix {
    let mut a = SymmetricMatrix::from_full(n, cost);
    for &(i, j) in edges {
        a.set(i, j, 0.5 * rho * (u[i * n + j] + u[j * n + i]));
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(g: &Graph) -> SdpSolution {
        let s = lovasz_theta(g, None).unwrap();
        assert!(s.converged, "not converged: {s:?}");
        s.verify(g, 1e-7).unwrap();
        s
    }

    #[test]
    fn complete_graphs_have_theta_one() {
        for n in 2..=8 {
            let s = theta(&Graph::complete(n).unwrap());
            assert!((s.theta() - 1.0).abs() < 1e-8, "n={n}: {}", s.theta());
        }
    }

    #[test]
    fn pentagon_is_sqrt5() {
        let s = theta(&Graph::cycle(5).unwrap());
        assert!((s.theta() - 5f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn circulant_pair() {
        let ci = Graph::circulant(8, &[1, 2]).unwrap();
        let s = theta(&ci);
        assert!((s.theta() - (8.0 - 4.0 * 2f64.sqrt())).abs() < 1e-6);
        let s = theta(&ci.complement());
        assert!((s.theta() - (2.0 + 2f64.sqrt())).abs() < 1e-6);
    }

    #[test]
    fn edgeless_is_n() {
        let s = theta(&Graph::edgeless(4).unwrap());
        assert!((s.theta() - 4.0).abs() < 1e-6);
        let s = theta(&Graph::edgeless(1).unwrap());
        assert!((s.theta() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_weights_give_zero() {
        let g = Graph::cycle(5).unwrap();
        let s = lovasz_theta(&g, Some(&[0.0; 5])).unwrap();
        assert!(s.converged);
        assert!(s.theta().abs() < 1e-9);
    }

    #[test]
    fn weighted_scaling() {
        let g = Graph::cycle(5).unwrap();
        let w = [0.2, 0.5, 0.1, 0.9, 0.4];
        let base = lovasz_theta(&g, Some(&w)).unwrap();
        assert!(base.converged);
        let scaled: Vec<f64> = w.iter().map(|v| v * 3.0).collect();
        let s = lovasz_theta(&g, Some(&scaled)).unwrap();
        assert!((s.theta() - 3.0 * base.theta()).abs() < 1e-6);
    }

    #[test]
    fn invalid_weights() {
        let g = Graph::cycle(5).unwrap();
        assert!(matches!(
            lovasz_theta(&g, Some(&[1.0; 4])),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            lovasz_theta(&g, Some(&[1.0, -1.0, 0.0, 0.0, 0.0])),
            Err(Error::InvalidWeight { index: 1, .. })
        ));
    }

    #[test]
    fn iteration_cap_reports_non_convergence() {
        let g = Graph::cycle(7).unwrap();
        let opts = SdpOptions {
            max_iterations: 3,
            ..SdpOptions::default()
        };
        let s = lovasz_theta_with(&g, None, &opts).unwrap();
        assert!(!s.converged);
        assert_eq!(s.iterations, 3);
        assert!(matches!(
            s.require_converged(),
            Err(Error::SdpNoConvergence { .. })
        ));
    }
}
