//! Orthogonal representations extracted from theta solutions.
//!
//! The primal side factors the optimal `X` into vectors whose squared
//! overlaps with a handle sum to ϑ(G). The dual side turns the certificate
//! matrix `A` into a representation of the complement in which every vertex
//! has the same overlap `1/ϑ(G)` with the handle.

use serde::Serialize;

use super::eigen::symmetric_eigendecomposition;
use super::{SdpSolution, SymmetricMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;

const ZERO_COLUMN: f64 = 1e-9;
const PRIMAL_VALUE_TOL: f64 = 1e-5;

/// Unit vectors per vertex, pairwise orthogonal on adjacent vertices, plus a
/// unit handle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthogonalRepresentation {
    pub graph_fingerprint: String,
    pub dimension: usize,
    pub vectors: Vec<Vec<f64>>,
    pub handle: Vec<f64>,
    /// `Σ_i ⟨handle, v_i⟩²`.
    pub value: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = dot(v, v).sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

impl OrthogonalRepresentation {
    /// Builds the record, recomputing `value` from the vectors.
    pub fn new(g: &Graph, vectors: Vec<Vec<f64>>, handle: Vec<f64>) -> Result<Self> {
        if vectors.len() != g.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: g.vertex_count(),
                actual: vectors.len(),
            });
        }
        let dimension = handle.len();
        if let Some(v) = vectors.iter().find(|v| v.len() != dimension) {
            return Err(Error::LengthMismatch {
                expected: dimension,
                actual: v.len(),
            });
        }
        let mut rep = Self {
            graph_fingerprint: g.fingerprint(),
            dimension,
            vectors,
            handle,
            value: 0.0,
        };
        rep.value = rep.probabilities().iter().sum();
        Ok(rep)
    }

    /// `⟨handle, v_i⟩²` per vertex.
    pub fn probabilities(&self) -> Vec<f64> {
        self.vectors
            .iter()
            .map(|v| {
                let d = dot(&self.handle, v);
                d * d
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Unit norms (1e-8), orthogonality on the edges of `g` (1e-6), and the
    /// recorded value (1e-9).
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.graph_fingerprint != g.fingerprint() {
            return Err(Error::Representation(
                "representation belongs to a different graph".into(),
            ));
        }
        if self.vectors.len() != g.vertex_count() {
            return Err(Error::Representation(
                "vector count differs from vertex count".into(),
            ));
        }
        let hn = dot(&self.handle, &self.handle).sqrt();
        if (hn - 1.0).abs() > 1e-8 {
            return Err(Error::Representation(format!("handle norm {hn}")));
        }
        for (i, v) in self.vectors.iter().enumerate() {
            let norm = dot(v, v).sqrt();
            if (norm - 1.0).abs() > 1e-8 {
                return Err(Error::Representation(format!("vector {i} has norm {norm}")));
            }
        }
        for (i, j) in g.edges() {
            let d = dot(&self.vectors[i], &self.vectors[j]);
            if d.abs() > 1e-6 {
                return Err(Error::Representation(format!(
                    "⟨v{i}, v{j}⟩ = {d:.3e} on an edge"
                )));
            }
        }
        let value: f64 = self.probabilities().iter().sum();
        if (value - self.value).abs() > 1e-9 {
            return Err(Error::Representation(format!(
                "value {} recomputes to {value}",
                self.value
            )));
        }
        Ok(())
    }
}

/// Factors `X = BᵀB` and normalises the columns. Vertices with `X_ii` below
/// `1e-9` get a fresh basis direction in an appended dimension. A final pass
/// orthogonalises each vector against its already-placed neighbours so the
/// edge constraints hold to round-off even when `X_ii` is small.
pub fn primal_representation(g: &Graph, sol: &SdpSolution) -> Result<OrthogonalRepresentation> {
    if sol.graph_fingerprint != g.fingerprint() {
        return Err(Error::Representation(
            "solution belongs to a different graph".into(),
        ));
    }
    if sol.is_weighted() {
        return Err(Error::Representation(
            "primal extraction needs an unweighted solution".into(),
        ));
    }
    let n = g.vertex_count();
    let eig = symmetric_eigendecomposition(&sol.primal_matrix)?;
    let components: Vec<usize> = (0..n).filter(|&k| eig.values[k] > 0.0).collect();
    let columns: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            components
                .iter()
                .map(|&k| eig.values[k].sqrt() * eig.vector_entry(i, k))
                .collect()
        })
        .collect();

    let rank = components.len();
    let zero: Vec<usize> = (0..n)
        .filter(|&i| sol.primal_matrix.get(i, i) <= ZERO_COLUMN)
        .collect();
    let dimension = rank + zero.len();

    let mut handle = vec![0.0; dimension];
    for c in &columns {
        for (h, x) in handle.iter_mut().zip(c) {
            *h += x;
        }
    }
    if normalize(&mut handle) == 0.0 {
        return Err(Error::Representation("handle vanishes".into()));
    }

    let mut vectors = Vec::with_capacity(n);
    for (i, c) in columns.iter().enumerate() {
        let mut v = vec![0.0; dimension];
        if let Some(slot) = zero.iter().position(|&z| z == i) {
            v[rank + slot] = 1.0;
        } else {
            v[..rank].copy_from_slice(c);
            normalize(&mut v);
        }
        vectors.push(v);
    }
    polish_orthogonality(g, &mut vectors)?;

    let rep = OrthogonalRepresentation::new(g, vectors, handle)?;
    let deviation = (rep.value - sol.primal_value).abs();
    if deviation > PRIMAL_VALUE_TOL {
        return Err(Error::Representation(format!(
            "extracted value {} deviates from primal value {} by {deviation:.3e}",
            rep.value, sol.primal_value
        )));
    }
    rep.validate(g)?;
    Ok(rep)
}

fn polish_orthogonality(g: &Graph, vectors: &mut [Vec<f64>]) -> Result<()> {
    for i in 0..vectors.len() {
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for j in g.neighbors(i).filter(|&j| j < i) {
            let mut b = vectors[j].clone();
            for q in &basis {
                let d = dot(&b, q);
                b.iter_mut().zip(q).for_each(|(x, y)| *x -= d * y);
            }
            if normalize(&mut b) > 1e-8 {
                basis.push(b);
            }
        }
        let v = &mut vectors[i];
        for q in &basis {
            let d = dot(v, q);
            v.iter_mut().zip(q).for_each(|(x, y)| *x -= d * y);
        }
        let norm = normalize(v);
        if norm < 0.5 {
            return Err(Error::Representation(format!(
                "vector {i} collapses under edge orthogonalisation (norm {norm:.3e})"
            )));
        }
    }
    Ok(())
}

/// Representation of the complement built from the dual certificate:
/// `Z = tI - A = BᵀB`, `v_i = (c_i, 1)/√t`, handle the appended axis, so
/// every `⟨handle, v_i⟩² = 1/t` with `t = λ_max(A)`.
pub fn dual_representation(g: &Graph, sol: &SdpSolution) -> Result<OrthogonalRepresentation> {
    if sol.graph_fingerprint != g.fingerprint() {
        return Err(Error::Representation(
            "solution belongs to a different graph".into(),
        ));
    }
    if sol.is_weighted() {
        return Err(Error::Representation(
            "dual extraction needs an unweighted solution".into(),
        ));
    }
    let n = g.vertex_count();
    let t = sol.dual_value;
    let a = &sol.dual_matrix;
    let z = SymmetricMatrix::from_fn(n, |i, j| {
        if i == j {
            t - a.get(i, i)
        } else {
            -a.get(i, j)
        }
    });
    let eig = symmetric_eigendecomposition(&z)?;
    let floor = -1e-7 * t.abs().max(1.0);
    if eig.min() < floor {
        return Err(Error::DualInfeasible(eig.min()));
    }
    let components: Vec<usize> = (0..n).filter(|&k| eig.values[k] > 0.0).collect();
    let d = components.len();
    let scale = t.sqrt();
    let vectors: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut v: Vec<f64> = components
                .iter()
                .map(|&k| eig.values[k].sqrt() * eig.vector_entry(i, k) / scale)
                .collect();
            v.push(1.0 / scale);
            normalize(&mut v);
            v
        })
        .collect();
    let mut handle = vec![0.0; d + 1];
    handle[d] = 1.0;
    let co = g.complement();
    let rep = OrthogonalRepresentation::new(&co, vectors, handle)?;
    rep.validate(&co)?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdp::lovasz_theta;

    #[test]
    fn pentagon_primal() {
        let g = Graph::cycle(5).unwrap();
        let s = lovasz_theta(&g, None).unwrap();
        let rep = primal_representation(&g, &s).unwrap();
        assert!((rep.value - 5f64.sqrt()).abs() < 1e-5);
        rep.validate(&g).unwrap();
        let p = rep.probabilities();
        assert!(p.iter().all(|&x| x <= 1.0 + 1e-12));
        assert!((p.iter().sum::<f64>() - rep.value).abs() < 1e-12);
    }

    #[test]
    fn single_edge_primal() {
        let g = Graph::complete(2).unwrap();
        let s = lovasz_theta(&g, None).unwrap();
        let rep = primal_representation(&g, &s).unwrap();
        assert!((rep.value - 1.0).abs() < 1e-6);
        assert!(dot(&rep.vectors[0], &rep.vectors[1]).abs() < 1e-9);
    }

    #[test]
    fn dual_examples() {
        let chsh = Graph::circulant(8, &[1, 2]).unwrap().complement();
        let s = lovasz_theta(&chsh, None).unwrap();
        let rep = dual_representation(&chsh, &s).unwrap();
        rep.validate(&Graph::circulant(8, &[1, 2]).unwrap())
            .unwrap();
        for q in rep.probabilities() {
            assert!((q - 1.0 / (2.0 + 2f64.sqrt())).abs() < 1e-6);
        }

        let k2 = Graph::complete(2).unwrap();
        let s = lovasz_theta(&k2, None).unwrap();
        let rep = dual_representation(&k2, &s).unwrap();
        for q in rep.probabilities() {
            assert!((q - 1.0).abs() < 1e-6);
        }

        let c5 = Graph::cycle(5).unwrap();
        let s = lovasz_theta(&c5, None).unwrap();
        let rep = dual_representation(&c5, &s).unwrap();
        for q in rep.probabilities() {
            assert!((q - 1.0 / 5f64.sqrt()).abs() < 1e-6);
        }
    }

    #[test]
    fn rejects_mismatched_graph_and_weighted() {
        let g = Graph::cycle(5).unwrap();
        let s = lovasz_theta(&g, None).unwrap();
        assert!(primal_representation(&g.complement(), &s).is_err());
        let w = lovasz_theta(&g, Some(&[0.5; 5])).unwrap();
        assert!(primal_representation(&g, &w).is_err());
        assert!(dual_representation(&g, &w).is_err());
    }

    #[test]
    fn broken_representation_fails_validation() {
        let g = Graph::complete(2).unwrap();
        let rep =
            OrthogonalRepresentation::new(&g, vec![vec![1.0, 0.0], vec![1.0, 0.0]], vec![1.0, 0.0])
                .unwrap();
        assert!(rep.validate(&g).is_err());
        let rep =
            OrthogonalRepresentation::new(&g, vec![vec![1.0, 0.0], vec![0.0, 2.0]], vec![1.0, 0.0])
                .unwrap();
        assert!(rep.validate(&g).is_err());
    }
}
