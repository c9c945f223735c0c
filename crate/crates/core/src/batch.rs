//! Seeded property workloads over many random instances, spread over the
//! rayon pool or run in order depending on the [`Execution`] mode. Every
//! instance is derived from its own seed, so results do not depend on the
//! mode or on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinatorics::{fractional_packing_number, independence_number};
use crate::error::Result;
use crate::exclusivity::{qm_cross_check, random_orthogonal_representation, JointSum};
use crate::graph::Graph;
use crate::par::{self, Execution};
use crate::sdp::{lovasz_theta, symmetric_eigendecomposition, SymmetricMatrix};

/// Slack used by the sandwich and product checks.
pub const SANDWICH_TOL: f64 = 1e-5;
pub const PRODUCT_TOL: f64 = 1e-4;

/// A random graph with `1 ≤ n ≤ max_n` and an edge density drawn from
/// `[0.1, 0.9)`, both fixed by `seed`.
pub fn seeded_graph(seed: u64, max_n: usize) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n.max(1));
    let p = rng.gen_range(0.1..0.9);
    Graph::random(n, p, rng.gen())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichRecord {
    pub seed: u64,
    pub n: usize,
    pub alpha: usize,
    pub theta: f64,
    pub theta_complement: f64,
    pub alpha_star: f64,
    pub converged: bool,
}

impl SandwichRecord {
    pub fn sandwich_holds(&self) -> bool {
        self.alpha as f64 - SANDWICH_TOL <= self.theta
            && self.theta <= self.alpha_star + SANDWICH_TOL
    }

    /// `ϑ(G)·ϑ(Ḡ) ≥ n`.
    pub fn product_holds(&self) -> bool {
        self.theta * self.theta_complement >= self.n as f64 - PRODUCT_TOL
    }
}

pub fn sandwich_suite(
    seeds: std::ops::Range<u64>,
    max_n: usize,
    exec: Execution,
) -> Result<Vec<SandwichRecord>> {
    let seeds: Vec<u64> = seeds.collect();
    par::map(exec, &seeds, |&seed| {
        let g = seeded_graph(seed, max_n)?;
        let alpha = independence_number(&g)?.size;
        let theta = lovasz_theta(&g, None)?;
        let theta_c = lovasz_theta(&g.complement(), None)?;
        let alpha_star = fractional_packing_number(&g)?.objective;
        Ok(SandwichRecord {
            seed,
            n: g.vertex_count(),
            alpha,
            theta: theta.theta(),
            theta_complement: theta_c.theta(),
            alpha_star,
            converged: theta.converged && theta_c.converged,
        })
    })
    .into_iter()
    .collect()
}

/// `Σ ⟨ψ|u_i⟩²⟨φ|v_i⟩²` for `count` random representation pairs of a random
/// graph and its complement.
pub fn cross_check_suite(count: u64, max_n: usize, exec: Execution) -> Result<Vec<JointSum>> {
    par::map_range(exec, 0..count as usize, |i| {
        let seed = i as u64;
        let g = seeded_graph(seed, max_n)?;
        let n = g.vertex_count();
        let rep_g = random_orthogonal_representation(&g, n, seed.wrapping_mul(2))?;
        let rep_h = random_orthogonal_representation(&g.complement(), n, seed.wrapping_mul(2) + 1)?;
        qm_cross_check(&g, &rep_g, &rep_h)
    })
    .into_iter()
    .collect()
}

/// Exhaustive independence number over all `2^n` subsets.
pub fn brute_force_alpha(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 24, "exhaustive search limited to 24 vertices");
    let masks: Vec<u32> = (0..n)
        .map(|i| g.neighbors(i).fold(0u32, |m, j| m | (1 << j)))
        .collect();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|i| s & (1 << i) == 0 || s & masks[i] == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndependenceRecord {
    pub seed: u64,
    pub n: usize,
    pub search: usize,
    pub exhaustive: usize,
}

pub fn independence_suite(
    count: u64,
    max_n: usize,
    exec: Execution,
) -> Result<Vec<IndependenceRecord>> {
    par::map_range(exec, 0..count as usize, |i| {
        let seed = i as u64;
        let g = seeded_graph(seed, max_n)?;
        Ok(IndependenceRecord {
            seed,
            n: g.vertex_count(),
            search: independence_number(&g)?.size,
            exhaustive: brute_force_alpha(&g),
        })
    })
    .into_iter()
    .collect()
}

/// Symmetric matrix with standard-normal-ish entries in `[-1, 1)`.
pub fn seeded_symmetric(seed: u64, max_order: usize) -> SymmetricMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = rng.gen_range(1..=max_order.max(1));
    SymmetricMatrix::from_fn(order, |_, _| rng.gen_range(-1.0..1.0))
}

/// Largest entrywise error of `V diag(λ) Vᵀ` against the input, per matrix.
pub fn eigen_suite(count: u64, max_order: usize, exec: Execution) -> Result<Vec<f64>> {
    par::map_range(exec, 0..count as usize, |i| {
        let m = seeded_symmetric(i as u64, max_order);
        let e = symmetric_eigendecomposition(&m)?;
        Ok(e.reconstruct_with(|x| x).max_abs_diff(&m))
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let a = sandwich_suite(0..6, 7, Execution::Parallel).unwrap();
        let b = sandwich_suite(0..6, 7, Execution::Sequential).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.sandwich_holds() && r.product_holds()));
        assert_eq!(
            cross_check_suite(20, 6, Execution::Parallel).unwrap(),
            cross_check_suite(20, 6, Execution::Sequential).unwrap()
        );
    }

    #[test]
    fn brute_force_on_known_graphs() {
        assert_eq!(brute_force_alpha(&Graph::cycle(5).unwrap()), 2);
        assert_eq!(brute_force_alpha(&Graph::complete(6).unwrap()), 1);
        assert_eq!(brute_force_alpha(&Graph::edgeless(7).unwrap()), 7);
        assert_eq!(
            brute_force_alpha(&Graph::circulant(8, &[1, 2]).unwrap().complement()),
            3
        );
    }

    #[test]
    fn seeded_instances_are_stable() {
        assert_eq!(seeded_graph(3, 10).unwrap(), seeded_graph(3, 10).unwrap());
        assert_eq!(seeded_symmetric(3, 5), seeded_symmetric(3, 5));
        assert!(eigen_suite(10, 8, Execution::default())
            .unwrap()
            .iter()
            .all(|&e| e < 1e-10));
    }
}
