use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sdp::OrthogonalRepresentation;

/// Standard normal deviates by Box–Muller over a seeded ChaCha stream.
struct Gaussian {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl Gaussian {
    fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    fn sample(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.rng.gen::<f64>();
        let u2 = self.rng.gen::<f64>();
        let r = (-2.0 * u1.ln()).sqrt();
        let angle = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(r * angle.sin());
        r * angle.cos()
    }

    fn vector(&mut self, d: usize) -> Vec<f64> {
        (0..d).map(|_| self.sample()).collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn subtract_projections(v: &mut [f64], basis: &[Vec<f64>]) {
    for q in basis {
        let d = dot(v, q);
        v.iter_mut().zip(q).for_each(|(x, y)| *x -= d * y);
    }
}

/// Random orthogonal representation of `g` in `dimension ≥ n` dimensions.
/// Vertices are placed in index order, each uniformly on the unit sphere of
/// the orthogonal complement of its already-placed neighbours; the handle is
/// uniform on the whole sphere. Deterministic in `seed`.
pub fn random_orthogonal_representation(
    g: &Graph,
    dimension: usize,
    seed: u64,
) -> Result<OrthogonalRepresentation> {
    let n = g.vertex_count();
    if dimension < n {
        return Err(Error::Dimension { dimension, n });
    }
    let mut gauss = Gaussian::new(seed);
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for j in g.neighbors(i).filter(|&j| j < i) {
            let mut b = vectors[j].clone();
            subtract_projections(&mut b, &basis);
            let norm = dot(&b, &b).sqrt();
            if norm > 1e-10 {
                b.iter_mut().for_each(|x| *x /= norm);
                basis.push(b);
            }
        }
        let v = loop {
            let mut v = gauss.vector(dimension);
            subtract_projections(&mut v, &basis);
            // second pass for numerical orthogonality
            subtract_projections(&mut v, &basis);
            let norm = dot(&v, &v).sqrt();
            if norm > 1e-6 {
                v.iter_mut().for_each(|x| *x /= norm);
                break v;
            }
        };
        vectors.push(v);
    }
    let handle = loop {
        let mut h = gauss.vector(dimension);
        let norm = dot(&h, &h).sqrt();
        if norm > 1e-6 {
            h.iter_mut().for_each(|x| *x /= norm);
            break h;
        }
    };
    OrthogonalRepresentation::new(g, vectors, handle)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgeless_graph_has_free_vectors() {
        let g = Graph::edgeless(4).unwrap();
        let rep = random_orthogonal_representation(&g, 4, 9).unwrap();
        rep.validate(&g).unwrap();
        assert!(dot(&rep.vectors[0], &rep.vectors[1]).abs() > 1e-6);
    }

    #[test]
    fn triangle_gets_an_orthonormal_basis() {
        let g = Graph::complete(3).unwrap();
        let rep = random_orthogonal_representation(&g, 3, 1).unwrap();
        rep.validate(&g).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let d = dot(&rep.vectors[i], &rep.vectors[j]);
                assert!((d - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
        // completeness: the squared overlaps of an orthonormal basis sum to 1
        assert!((rep.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_per_seed() {
        let g = Graph::random(7, 0.5, 2).unwrap();
        let a = random_orthogonal_representation(&g, 9, 42).unwrap();
        let b = random_orthogonal_representation(&g, 9, 42).unwrap();
        assert_eq!(a, b);
        let c = random_orthogonal_representation(&g, 9, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn dimension_below_n_rejected() {
        let g = Graph::cycle(5).unwrap();
        assert_eq!(
            random_orthogonal_representation(&g, 4, 0),
            Err(Error::Dimension { dimension: 4, n: 5 })
        );
    }

    #[test]
    fn gaussian_moments() {
        let mut g = Gaussian::new(5);
        let xs: Vec<f64> = (0..20000).map(|_| g.sample()).collect();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / xs.len() as f64;
        assert!(mean.abs() < 0.03 && (var - 1.0).abs() < 0.05);
    }
}
