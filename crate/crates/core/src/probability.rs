use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Upper slack allowed on a single probability.
pub const PROBABILITY_SLACK: f64 = 1e-12;

/// One probability per vertex (a behaviour on the events of a graph). Entries
/// are not normalised against each other: events need not be exhaustive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityAssignment {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_fingerprint: Option<String>,
    #[serde(rename = "p")]
    probabilities: Vec<f64>,
}

impl ProbabilityAssignment {
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        for (index, &value) in probabilities.iter().enumerate() {
            if !(0.0..=1.0 + PROBABILITY_SLACK).contains(&value) {
                return Err(Error::InvalidProbability { index, value });
            }
        }
        Ok(Self {
            graph_fingerprint: None,
            probabilities,
        })
    }

    /// Validates the length against `g` and records its fingerprint.
    pub fn for_graph(g: &Graph, probabilities: Vec<f64>) -> Result<Self> {
        check_len(g.vertex_count(), probabilities.len())?;
        let mut p = Self::new(probabilities)?;
        p.graph_fingerprint = Some(g.fingerprint());
        Ok(p)
    }

    pub fn uniform(g: &Graph, value: f64) -> Result<Self> {
        Self::for_graph(g, vec![value; g.vertex_count()])
    }

    pub fn indicator(g: &Graph, vertex: usize) -> Result<Self> {
        let n = g.vertex_count();
        if vertex >= n {
            return Err(Error::IndexOutOfRange { index: vertex, n });
        }
        let mut v = vec![0.0; n];
        v[vertex] = 1.0;
        Self::for_graph(g, v)
    }

    /// Re-validates after deserialisation.
    pub fn validated(self) -> Result<Self> {
        let fp = self.graph_fingerprint;
        let mut p = Self::new(self.probabilities)?;
        p.graph_fingerprint = fp;
        Ok(p)
    }

    pub fn values(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Fails when the recorded fingerprint (if any) is not `g`'s, or the
    /// length differs.
    pub fn check_graph(&self, g: &Graph) -> Result<()> {
        check_len(g.vertex_count(), self.len())?;
        match &self.graph_fingerprint {
            Some(fp) if *fp != g.fingerprint() => Err(Error::Parse(format!(
                "distribution fingerprint {fp} does not match graph {}",
                g.fingerprint()
            ))),
            _ => Ok(()),
        }
    }
}

pub(crate) fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, actual })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ProbabilityAssignment::new(vec![0.0, 1.0, 1.0 + 1e-13]).is_ok());
        assert!(ProbabilityAssignment::new(vec![1.1]).is_err());
        assert!(ProbabilityAssignment::new(vec![-0.1]).is_err());
        assert!(ProbabilityAssignment::new(vec![f64::NAN]).is_err());
        let g = Graph::cycle(5).unwrap();
        assert!(ProbabilityAssignment::for_graph(&g, vec![0.1; 4]).is_err());
        let p = ProbabilityAssignment::indicator(&g, 2).unwrap();
        assert_eq!(p.values(), &[0.0, 0.0, 1.0, 0.0, 0.0]);
        assert!(p.check_graph(&g).is_ok());
        assert!(p.check_graph(&g.complement()).is_err());
    }
}
