//! Exact combinatorial bounds: the independence number α(G), maximal cliques,
//! and the fractional packing number α*(G) as a clique-constrained LP.

mod cliques;
mod independence;
pub mod simplex;

pub use cliques::{maximal_cliques, CliqueSet};
pub use independence::{independence_number, IndependentSet};
pub use simplex::LpStatus;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::probability::ProbabilityAssignment;

/// Slack on clique sums before a constraint counts as violated.
pub const CLIQUE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpSolution {
    pub objective: f64,
    pub weights: Vec<f64>,
    pub status: LpStatus,
    pub iterations: usize,
}

/// α*(G): maximise Σ w_i over w ≥ 0 with Σ_{i∈C} w_i ≤ 1 for every maximal
/// clique C. Non-maximal clique constraints are implied.
pub fn fractional_packing_number(g: &Graph) -> Result<LpSolution> {
    let cliques = maximal_cliques(g)?;
    packing_lp(g.vertex_count(), &cliques)
}

/// Solves the packing LP over `cliques` by row generation: the simplex runs
/// on an active subset of clique rows, every clique is rescanned against the
/// result, and the most violated ones join the active set until none is
/// violated. The optimum is the optimum over the full clique list.
pub fn packing_lp(n: usize, cliques: &CliqueSet) -> Result<LpSolution> {
    let all: Vec<&[usize]> = cliques.iter().collect();
    let mut active = vec![false; all.len()];
    // seed with enough rows to cover every vertex
    let mut covered = vec![false; n];
    for (k, c) in all.iter().enumerate() {
        if c.iter().any(|&v| !covered[v]) {
            active[k] = true;
            c.iter().for_each(|&v| covered[v] = true);
        }
    }
    if let Some(v) = covered.iter().position(|c| !c) {
        return Err(Error::Lp(format!(
            "vertex {v} lies in no clique constraint"
        )));
    }
    let batch = n.max(32);
    let mut iterations = 0;
    loop {
        let rows: Vec<Vec<f64>> = all
            .iter()
            .zip(&active)
            .filter(|(_, &on)| on)
            .map(|(c, _)| {
                let mut row = vec![0.0; n];
                c.iter().for_each(|&v| row[v] = 1.0);
                row
            })
            .collect();
        let out = simplex::maximize(&vec![1.0; n], &rows, &vec![1.0; rows.len()])?;
        iterations += out.iterations;
        if out.status != LpStatus::Optimal {
            return Err(Error::Lp("packing LP reported unbounded".into()));
        }
        // clamp round-off below zero
        let weights: Vec<f64> = out.x.iter().map(|&w| w.max(0.0)).collect();
        let mut violated: Vec<(f64, usize)> = all
            .iter()
            .enumerate()
            .filter(|(k, _)| !active[*k])
            .filter_map(|(k, c)| {
                let sum: f64 = c.iter().map(|&v| weights[v]).sum();
                (sum > 1.0 + ROW_GENERATION_TOL).then_some((sum, k))
            })
            .collect();
        if violated.is_empty() {
            return Ok(LpSolution {
                objective: weights.iter().sum(),
                weights,
                status: out.status,
                iterations,
            });
        }
        violated.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        for &(_, k) in violated.iter().take(batch) {
            active[k] = true;
        }
    }
}

const ROW_GENERATION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliqueViolation {
    pub clique: Vec<usize>,
    pub sum: f64,
}

/// Every maximal clique whose probability sum exceeds `1 + CLIQUE_TOL`.
/// An empty report means the assignment respects all pairwise-exclusivity
/// constraints.
pub fn check_clique_constraints(
    g: &Graph,
    p: &ProbabilityAssignment,
) -> Result<Vec<CliqueViolation>> {
    p.check_graph(g)?;
    let cliques = maximal_cliques(g)?;
    Ok(clique_violations(&cliques, p.values()))
}

pub fn clique_violations(cliques: &CliqueSet, p: &[f64]) -> Vec<CliqueViolation> {
    cliques
        .iter()
        .filter_map(|c| {
            let sum: f64 = c.iter().map(|&v| p[v]).sum();
            (sum > 1.0 + CLIQUE_TOL).then(|| CliqueViolation {
                clique: c.to_vec(),
                sum,
            })
        })
        .collect()
}
