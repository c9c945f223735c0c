use thiserror::Error;

/// Errors produced by graph construction, the combinatorial and semidefinite
/// solvers, and the certificate checks built on top of them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("circulant connection {connection} outside [1, {max}]")]
    BadConnection { connection: usize, max: usize },
    #[error("{what}: size {size} exceeds limit {limit} (raise with XBOUND_MAX_N)")]
    SizeGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("invalid probability {value} at vertex {index}")]
    InvalidProbability { index: usize, value: f64 },
    #[error("invalid weight {value} at vertex {index}")]
    InvalidWeight { index: usize, value: f64 },
    #[error("dimension {dimension} is below the vertex count {n}")]
    Dimension { dimension: usize, n: usize },
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("graph is not the complement of the reference graph under the given mapping")]
    NotComplement,
    #[error("graph is not self-complementary")]
    NotSelfComplementary,
    #[error("graph is not vertex-transitive; the uniform reduction does not apply")]
    NotVertexTransitive,
    #[error("eigendecomposition did not converge after {0} sweeps")]
    EigenNoConvergence(usize),
    #[error("linear program: {0}")]
    Lp(String),
    #[error("semidefinite solve did not converge (residual {residual:.3e}, gap {gap:.3e})")]
    SdpNoConvergence { residual: f64, gap: f64 },
    #[error("representation check failed: {0}")]
    Representation(String),
    #[error("dual matrix is not PSD at current precision (min eigenvalue {0:.3e})")]
    DualInfeasible(f64),
    #[error("certificate check `{check}` failed by {amount:.3e}")]
    Certificate { check: &'static str, amount: f64 },
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
