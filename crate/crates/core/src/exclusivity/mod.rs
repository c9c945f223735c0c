//! Exclusivity-principle bounds.
//!
//! Pairing a behaviour `p` on `G` with any behaviour `q` on the complement
//! `Ḡ` yields joint events `u_i v_i` that are pairwise exclusive, so
//! `Σ p_i q_i ≤ 1`. Ranging `q` over quantum behaviours on `Ḡ` gives the
//! weighted-theta test `ϑ(Ḡ, p) ≤ 1`, and the dual theta certificate turns
//! that into the bound `Σ p_i ≤ ϑ(G)`, attained by the primal representation.

mod random;

pub use random::random_orthogonal_representation;

use serde::Serialize;

use crate::combinatorics::{clique_violations, maximal_cliques, CliqueViolation};
use crate::error::{Error, Result};
use crate::graph::{find_isomorphism, is_vertex_transitive, Graph, VertexMap};
use crate::par::{self, Execution};
use crate::probability::{check_len, ProbabilityAssignment};
use crate::sdp::{
    dual_representation, lovasz_theta, primal_representation, OrthogonalRepresentation,
};

/// Pass threshold for every `≤ 1` exclusivity check.
pub const EP_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointSum {
    pub value: f64,
    pub pass: bool,
}

impl JointSum {
    fn new(value: f64) -> Self {
        Self {
            value,
            pass: value <= 1.0 + EP_TOL,
        }
    }
}

/// `Σ_i p_i q_{π(i)}` for `p` on `g` and `q` on `h`, where `π` (identity if
/// absent) must map the complement of `g` onto `h`. Only then do the joint
/// events form a complete graph.
pub fn joint_ep_sum(
    g: &Graph,
    p: &ProbabilityAssignment,
    h: &Graph,
    q: &ProbabilityAssignment,
    mapping: Option<&VertexMap>,
) -> Result<JointSum> {
    p.check_graph(g)?;
    q.check_graph(h)?;
    let n = g.vertex_count();
    let identity;
    let map = match mapping {
        Some(m) => {
            check_len(n, m.len())?;
            m
        }
        None => {
            identity = VertexMap::identity(n);
            &identity
        }
    };
    if !map.is_isomorphism(&g.complement(), h) {
        return Err(Error::NotComplement);
    }
    let value = (0..n)
        .map(|i| p.values()[i] * q.values()[map.apply(i)])
        .sum();
    Ok(JointSum::new(value))
}

/// `Σ_i ⟨ψ|u_i⟩²⟨φ|v_i⟩²` for a representation of `g` and one of its
/// complement. Each vertex pair is adjacent in `g` or in `Ḡ`, so the tensor
/// vectors `u_i ⊗ v_i` are orthonormal and the sum cannot exceed one.
pub fn qm_cross_check(
    g: &Graph,
    rep_g: &OrthogonalRepresentation,
    rep_h: &OrthogonalRepresentation,
) -> Result<JointSum> {
    rep_g.validate(g)?;
    rep_h.validate(&g.complement())?;
    let value = rep_g
        .probabilities()
        .iter()
        .zip(rep_h.probabilities())
        .map(|(a, b)| a * b)
        .sum();
    Ok(JointSum::new(value))
}

/// `ϑ(Ḡ, p)`: the largest `Σ p_i ⟨φ|v_i⟩²` over all orthogonal representations
/// of the complement. `p` passes every such constraint iff this is `≤ 1`.
pub fn ep_constraint_max(g: &Graph, p: &ProbabilityAssignment) -> Result<f64> {
    p.check_graph(g)?;
    let sol = lovasz_theta(&g.complement(), Some(p.values()))?.require_converged()?;
    Ok(sol.theta())
}

/// Largest uniform value `S = nP` for a vertex-transitive graph, where `P`
/// is capped by `1/ϑ(Ḡ)`.
pub fn uniform_symmetric_bound(g: &Graph) -> Result<f64> {
    if !is_vertex_transitive(g)? {
        return Err(Error::NotVertexTransitive);
    }
    let sol = lovasz_theta(&g.complement(), None)?.require_converged()?;
    Ok(g.vertex_count() as f64 / sol.theta())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfComplementaryBound {
    pub bound: f64,
    pub certified_tight: bool,
    /// Isomorphism from `Ḡ` onto `G`.
    #[serde(skip)]
    pub complement_map: VertexMap,
    /// `Σ p_i p_{π(i)}` for the uniform `p = 1/√n`; equals one.
    pub saturation: f64,
}

/// For self-complementary `g` the joint-event constraint pairs `p` with
/// itself, `Σ p_i p_{π(i)} ≤ 1`, which caps a uniform sum at `√n`. Tightness
/// is certified only when `g` is vertex-transitive.
pub fn self_complementary_bound(g: &Graph) -> Result<SelfComplementaryBound> {
    let co = g.complement();
    let map = find_isomorphism(&co, g)?.ok_or(Error::NotSelfComplementary)?;
    let n = g.vertex_count();
    let p = ProbabilityAssignment::uniform(g, 1.0 / (n as f64).sqrt())?;
    let saturation = joint_ep_sum(g, &p, g, &p, Some(&map))?.value;
    Ok(SelfComplementaryBound {
        bound: (n as f64).sqrt(),
        certified_tight: is_vertex_transitive(g)?,
        complement_map: map,
        saturation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoCopyBound {
    /// `√α*(G ⊛ G)`.
    pub per_copy_bound: f64,
    pub product_alpha_star: f64,
    pub product_vertices: usize,
    pub product_cliques: usize,
}

/// Pairwise exclusivity on two independent copies: `Σp · Σq ≤ α*(G ⊛ G)`,
/// so with `q = p` each copy is bounded by `√α*(G ⊛ G)`.
pub fn two_copy_ep_bound(g: &Graph) -> Result<TwoCopyBound> {
    let product = g.or_product(g)?;
    let cliques = maximal_cliques(&product)?;
    let sol = crate::combinatorics::packing_lp(product.vertex_count(), &cliques)?;
    Ok(TwoCopyBound {
        per_copy_bound: sol.objective.sqrt(),
        product_alpha_star: sol.objective,
        product_vertices: product.vertex_count(),
        product_cliques: cliques.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    /// The measured quantity (a deviation, or a value compared with one).
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckOutcome {
    fn at_most(name: &'static str, value: f64, tolerance: f64) -> Self {
        Self {
            name,
            value,
            tolerance,
            passed: value <= tolerance,
        }
    }
}

/// Two-sided certificate that `Σ p_i ≤ ϑ(G)` is the exclusivity bound and is
/// attained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpCertificate {
    pub theta: f64,
    pub uncertainty: f64,
    pub sdp_iterations: usize,
    /// `q_i = ⟨φ|v_i⟩²` from the dual representation of `Ḡ`.
    pub upper_witness: ProbabilityAssignment,
    /// `p_i = ⟨ψ|u_i⟩²` from the primal representation of `G`.
    pub achiever: ProbabilityAssignment,
    pub achiever_sum: f64,
    pub joint_sum: f64,
    pub checks: Vec<CheckOutcome>,
    #[serde(skip)]
    pub witness_violations: Vec<CliqueViolation>,
}

impl EpCertificate {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Builds the certificate and records every check; fails only when a solve
/// or an extraction fails.
pub fn ep_certificate(g: &Graph, exec: Execution) -> Result<EpCertificate> {
    let co = g.complement();
    let (sol, (co_cliques, cliques)) = par::join(
        exec,
        || lovasz_theta(g, None),
        || par::join(exec, || maximal_cliques(&co), || maximal_cliques(g)),
    );
    let sol = sol?;
    let (co_cliques, cliques) = (co_cliques?, cliques?);
    let converged = sol.converged;
    let theta = sol.theta();

    let dual = dual_representation(g, &sol)?;
    let primal = primal_representation(g, &sol)?;
    let q = dual.probabilities();
    let p = primal.probabilities();
    let upper_witness = ProbabilityAssignment::for_graph(&co, clamp_unit(&q))?;
    let achiever = ProbabilityAssignment::for_graph(g, clamp_unit(&p))?;
    let achiever_sum: f64 = p.iter().sum();
    let joint_sum: f64 = p.iter().zip(&q).map(|(a, b)| a * b).sum();

    let witness_violations = clique_violations(&co_cliques, upper_witness.values());
    let achiever_violations = clique_violations(&cliques, achiever.values());
    let worst_clique = |v: &[CliqueViolation]| v.iter().map(|c| c.sum - 1.0).fold(0.0, f64::max);
    let uniform_dev = q
        .iter()
        .map(|&qi| (qi - 1.0 / theta).abs())
        .fold(0.0, f64::max);
    let min_max = q
        .iter()
        .map(|&qi| 1.0 / qi)
        .fold(f64::NEG_INFINITY, f64::max);

    let checks = vec![
        CheckOutcome {
            name: "sdp_converged",
            value: sol.gap.abs(),
            tolerance: 1e-7,
            passed: converged,
        },
        CheckOutcome::at_most("witness_uniform", uniform_dev, 1e-6),
        CheckOutcome::at_most("achiever_sum", (achiever_sum - theta).abs(), 1e-5),
        CheckOutcome::at_most("joint_sum", joint_sum - 1.0, 1e-6),
        CheckOutcome {
            name: "witness_cliques",
            value: worst_clique(&witness_violations),
            tolerance: crate::combinatorics::CLIQUE_TOL,
            passed: witness_violations.is_empty(),
        },
        CheckOutcome {
            name: "achiever_cliques",
            value: worst_clique(&achiever_violations),
            tolerance: crate::combinatorics::CLIQUE_TOL,
            passed: achiever_violations.is_empty(),
        },
        CheckOutcome::at_most("min_max", (min_max - theta).abs(), 1e-5),
    ];

    Ok(EpCertificate {
        theta,
        uncertainty: sol.uncertainty(),
        sdp_iterations: sol.iterations,
        upper_witness,
        achiever,
        achiever_sum,
        joint_sum,
        checks,
        witness_violations,
    })
}

/// The certificate, or an error naming the first failed check.
pub fn ep_bound(g: &Graph) -> Result<EpCertificate> {
    let cert = ep_certificate(g, Execution::default())?;
    match cert.first_failure() {
        None => Ok(cert),
        Some(c) => Err(Error::Certificate {
            check: c.name,
            amount: c.value,
        }),
    }
}

/// Squared overlaps can exceed one by round-off.
fn clamp_unit(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| x.clamp(0.0, 1.0)).collect()
}
