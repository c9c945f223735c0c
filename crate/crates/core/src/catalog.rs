//! Reference scenarios with known bound values.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::combinatorics::{fractional_packing_number, independence_number};
use crate::error::{Error, Result};
use crate::exclusivity::{ep_bound, two_copy_ep_bound};
use crate::graph::Graph;
use crate::par::{self, Execution};
use crate::sdp::lovasz_theta;

pub const ALPHA: &str = "alpha";
pub const THETA: &str = "theta";
pub const ALPHA_STAR: &str = "alpha_star";
pub const EP_BOUND: &str = "ep_bound";
pub const TWO_COPY: &str = "two_copy";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expected {
    pub value: f64,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub name: String,
    #[serde(skip)]
    pub graph: Graph,
    pub expected: BTreeMap<String, Expected>,
}

impl Scenario {
    fn new(name: impl Into<String>, graph: Graph) -> Self {
        Self {
            name: name.into(),
            graph,
            expected: BTreeMap::new(),
        }
    }

    fn expect(mut self, key: &str, value: f64, provenance: &str) -> Self {
        self.expected.insert(
            key.to_string(),
            Expected {
                value,
                provenance: provenance.to_string(),
            },
        );
        self
    }
}

/// Comparison tolerance per bound; `alpha` is an integer and must match.
pub fn tolerance(key: &str) -> f64 {
    match key {
        ALPHA => 0.0,
        THETA | ALPHA_STAR => 1e-6,
        EP_BOUND => 1e-5,
        _ => 1e-3,
    }
}

/// The five-event contextuality scenario: a pentagon.
pub fn kcbs() -> Scenario {
    let s5 = 5f64.sqrt();
    Scenario::new("kcbs", Graph::cycle(5).expect("valid"))
        .expect(
            ALPHA,
            2.0,
            "noncontextual bound of the pentagon, by exhaustion",
        )
        .expect(
            THETA,
            s5,
            "quantum bound √5, uniform P = 1/√5 saturating ΣP² ≤ 1",
        )
        .expect(ALPHA_STAR, 2.5, "uniform 1/2 on the five edge constraints")
        .expect(EP_BOUND, s5, "exclusivity bound equals ϑ")
        .expect(TWO_COPY, s5, "√α*(C5⊛C5) = √5, five 5-cliques")
}

/// The eight CHSH events: the complement of the circulant Ci₈(1,2).
pub fn chsh() -> Scenario {
    let graph = Graph::circulant(8, &[1, 2]).expect("valid").complement();
    let tsirelson = 2.0 + std::f64::consts::SQRT_2;
    Scenario::new("chsh", graph)
        .expect(ALPHA, 3.0, "local hidden-variable bound 3")
        .expect(THETA, tsirelson, "Tsirelson bound 2+√2")
        .expect(ALPHA_STAR, 4.0, "nonsignaling (PR box) bound 4")
        .expect(EP_BOUND, tsirelson, "8/ϑ(Ci₈(1,2)) = 8/(8−4√2) = 2+√2")
        .expect(
            TWO_COPY,
            8.0 / 5f64.sqrt(),
            "two-copy pairwise exclusivity bound 8/√5",
        )
}

/// `K_n`: every pair of events exclusive.
pub fn complete_scenario(n: usize) -> Result<Scenario> {
    let graph = Graph::complete(n)?;
    Ok(Scenario::new(format!("complete:{n}"), graph)
        .expect(ALPHA, 1.0, "one event at a time")
        .expect(THETA, 1.0, "ϑ of a complete graph is 1")
        .expect(ALPHA_STAR, 1.0, "single clique constraint"))
}

/// Odd cycle `C_n`, `n ≥ 5`, with the closed-form theta.
pub fn odd_cycle(n: usize) -> Result<Scenario> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(Error::UnknownScenario(format!(
            "cycle:{n} (needs odd n ≥ 5)"
        )));
    }
    let c = (std::f64::consts::PI / n as f64).cos();
    let nf = n as f64;
    Ok(Scenario::new(format!("cycle:{n}"), Graph::cycle(n)?)
        .expect(ALPHA, ((n - 1) / 2) as f64, "(n−1)/2")
        .expect(
            THETA,
            nf * c / (1.0 + c),
            "closed form n·cos(π/n)/(1+cos(π/n))",
        )
        .expect(ALPHA_STAR, nf / 2.0, "n/2, uniform 1/2 on the edges"))
}

/// `kcbs`, `chsh`, `complete:<n>` or `cycle:<n>`.
pub fn by_name(name: &str) -> Result<Scenario> {
    let unknown = || Error::UnknownScenario(name.to_string());
    match name {
        "kcbs" => Ok(kcbs()),
        "chsh" => Ok(chsh()),
        _ => {
            let (family, arg) = name.split_once(':').ok_or_else(unknown)?;
            let n: usize = arg.parse().map_err(|_| unknown())?;
            match family {
                "complete" => complete_scenario(n),
                "cycle" => odd_cycle(n),
                _ => Err(unknown()),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyLine {
    pub key: String,
    pub expected: f64,
    pub computed: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Recomputes every expected value of `scenario`, stages in parallel.
pub fn verify(scenario: &Scenario, exec: Execution) -> Result<Vec<VerifyLine>> {
    let keys: Vec<(&String, &Expected)> = scenario.expected.iter().collect();
    let g = &scenario.graph;
    let computed = par::map(exec, &keys, |(key, _)| compute(g, key));
    keys.iter()
        .zip(computed)
        .map(|((key, exp), value)| {
            let value = value?;
            let tol = tolerance(key);
            Ok(VerifyLine {
                key: key.to_string(),
                expected: exp.value,
                computed: value,
                tolerance: tol,
                passed: (value - exp.value).abs() <= tol,
            })
        })
        .collect()
}

fn compute(g: &Graph, key: &str) -> Result<f64> {
    match key {
        ALPHA => Ok(independence_number(g)?.size as f64),
        THETA => Ok(lovasz_theta(g, None)?.require_converged()?.theta()),
        ALPHA_STAR => Ok(fractional_packing_number(g)?.objective),
        EP_BOUND => Ok(ep_bound(g)?.theta),
        TWO_COPY => Ok(two_copy_ep_bound(g)?.per_copy_bound),
        other => Err(Error::UnknownScenario(format!("bound `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::find_isomorphism;

    #[test]
    fn kcbs_shape() {
        let s = kcbs();
        assert_eq!((s.graph.vertex_count(), s.graph.edge_count()), (5, 5));
        assert!(find_isomorphism(&s.graph, &s.graph.complement())
            .unwrap()
            .is_some());
        assert!((s.expected[THETA].value - 2.2360680).abs() < 1e-7);
        assert_eq!(s.expected[ALPHA].value, 2.0);
    }

    #[test]
    fn chsh_shape() {
        let s = chsh();
        assert_eq!(s.graph.complement(), Graph::circulant(8, &[1, 2]).unwrap());
        assert_eq!(s.graph.degrees(), vec![3; 8]);
        assert_eq!(s.graph.edge_count(), 12);
        assert!((s.expected[THETA].value - 3.4142136).abs() < 1e-7);
        assert_eq!(s.expected[ALPHA_STAR].value, 4.0);
    }

    #[test]
    fn complete_and_cycles() {
        for n in [1, 2, 5] {
            let s = complete_scenario(n).unwrap();
            assert!(s.expected.values().all(|e| e.value == 1.0));
        }
        let c5 = odd_cycle(5).unwrap();
        assert!((c5.expected[THETA].value - 5f64.sqrt()).abs() < 1e-12);
        let c7 = odd_cycle(7).unwrap();
        assert_eq!(
            (c7.expected[ALPHA].value, c7.expected[ALPHA_STAR].value),
            (3.0, 3.5)
        );
        let c9 = odd_cycle(9).unwrap();
        assert!((c9.expected[THETA].value - 4.3600896).abs() < 1e-6);
        assert!(odd_cycle(6).is_err());
        assert!(odd_cycle(3).is_err());
    }

    #[test]
    fn names_resolve() {
        assert_eq!(by_name("kcbs").unwrap().name, "kcbs");
        assert_eq!(
            by_name("complete:4").unwrap().graph,
            Graph::complete(4).unwrap()
        );
        assert_eq!(by_name("cycle:7").unwrap().graph, Graph::cycle(7).unwrap());
        for bad in ["petersen", "complete:x", "cycle:8", "ring:5"] {
            assert!(by_name(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn every_value_carries_provenance() {
        for s in [
            kcbs(),
            chsh(),
            complete_scenario(3).unwrap(),
            odd_cycle(9).unwrap(),
        ] {
            assert!(s.expected.values().all(|e| !e.provenance.is_empty()));
        }
    }

    #[test]
    fn small_scenarios_verify() {
        for s in [
            kcbs(),
            complete_scenario(4).unwrap(),
            odd_cycle(7).unwrap(),
            odd_cycle(9).unwrap(),
        ] {
            for line in verify(&s, Execution::default()).unwrap() {
                assert!(line.passed, "{}: {line:?}", s.name);
            }
        }
    }
}
