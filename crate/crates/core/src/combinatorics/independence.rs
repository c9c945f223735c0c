use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::limits::{guard, Limits};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentSet {
    pub size: usize,
    /// Sorted members of one maximum independent set.
    pub witness: Vec<usize>,
}

/// α(G) by branch and bound on cliques of the complement, bounded by a greedy
/// colouring of the candidate set.
pub fn independence_number(g: &Graph) -> Result<IndependentSet> {
    let n = g.vertex_count();
    guard("independence number", n, Limits::current().independence)?;
    let co = g.complement();
    let mut search = MaxClique {
        g: &co,
        best: Vec::new(),
    };
    let mut r = Vec::new();
    search.expand(&mut r, VertexSet::full(n));
    let mut witness = search.best;
    witness.sort_unstable();
    Ok(IndependentSet {
        size: witness.len(),
        witness,
    })
}

struct MaxClique<'a> {
    g: &'a Graph,
    best: Vec<usize>,
}

impl MaxClique<'_> {
    /// Vertices of `p` in colour-class order with the running colour count.
    fn colour_order(&self, p: &VertexSet) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = p.clone();
        let mut order = Vec::with_capacity(p.len());
        let mut colours = Vec::with_capacity(p.len());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q = q.difference(self.g.row(v));
                uncoloured.remove(v);
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut p: VertexSet) {
        let (order, colours) = self.colour_order(&p);
        for k in (0..order.len()).rev() {
            if r.len() + colours[k] <= self.best.len() {
                return;
            }
            let v = order[k];
            r.push(v);
            let next = p.intersection(self.g.row(v));
            if next.is_empty() {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
            } else {
                self.expand(r, next);
            }
            r.pop();
            p.remove(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force(g: &Graph) -> usize {
        let n = g.vertex_count();
        (0u32..1 << n)
            .filter(|&mask| {
                (0..n).all(|i| {
                    (i + 1..n)
                        .all(|j| mask >> i & 1 == 0 || mask >> j & 1 == 0 || !g.adjacent(i, j))
                })
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn catalog_values() {
        let chsh = Graph::circulant(8, &[1, 2]).unwrap().complement();
        assert_eq!(independence_number(&chsh).unwrap().size, 3);
        assert_eq!(
            independence_number(&Graph::complete(6).unwrap())
                .unwrap()
                .size,
            1
        );
        let e = independence_number(&Graph::edgeless(7).unwrap()).unwrap();
        assert_eq!(e.witness, (0..7).collect::<Vec<_>>());
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(brute_force(&c5), 2);
        assert_eq!(independence_number(&c5).unwrap().size, 2);
    }

    #[test]
    fn guard_at_65() {
        assert!(independence_number(&Graph::edgeless(65).unwrap()).is_err());
        assert_eq!(
            independence_number(&Graph::cycle(64).unwrap())
                .unwrap()
                .size,
            32
        );
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 1usize..13, p in 0.0..1.0f64, seed: u64) {
            let g = Graph::random(n, p, seed).unwrap();
            let s = independence_number(&g).unwrap();
            prop_assert!(g.is_independent(&s.witness));
            prop_assert_eq!(s.size, brute_force(&g));
        }
    }
}
