//! Simple undirected graphs over `0..n`, stored as a dense bit matrix, and the
//! constructions used by the bound computations: complement, OR (disjunctive)
//! product and circulants.

mod bitset;
mod iso;

pub use bitset::VertexSet;
pub use iso::{find_isomorphism, is_rotation_invariant, is_vertex_transitive, VertexMap};

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::limits::{guard, Limits};
use bitset::words_for;

/// Vertices are adjacent when the corresponding events are mutually exclusive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn edgeless(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let words = words_for(n);
        Ok(Self {
            n,
            words,
            bits: vec![0; n * words],
        })
    }

    /// Builds a graph from an edge list; pairs are symmetrized and duplicates
    /// collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::edgeless(n)?;
        for &(i, j) in edges {
            for index in [i, j] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            g.set(i, j);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        Ok(Self::edgeless(n)?.complement())
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Parse(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    /// `i ~ j` iff the circular distance between `i` and `j` is one of
    /// `connections`, each of which must lie in `[1, n/2]`.
    pub fn circulant(n: usize, connections: &[usize]) -> Result<Self> {
        let mut g = Self::edgeless(n)?;
        let max = n / 2;
        for &c in connections {
            if c == 0 || c > max {
                return Err(Error::BadConnection { connection: c, max });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let d = (j - i).min(n - (j - i));
                if connections.contains(&d) {
                    g.set(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Erdős–Rényi G(n, p), deterministic for a given seed.
    pub fn random(n: usize, p: f64, seed: u64) -> Result<Self> {
        let mut g = Self::edgeless(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen::<f64>() < p {
                    g.set(i, j);
                }
            }
        }
        Ok(g)
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
        self.bits[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Adjacency row of `i` as raw bit words.
    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.adjacent(i, j))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adjacent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Self {
        let mut g = Self {
            n: self.n,
            words: self.words,
            bits: self.bits.iter().map(|w| !w).collect(),
        };
        // clear the diagonal and the padding bits past n
        for i in 0..self.n {
            let row = &mut g.bits[i * self.words..(i + 1) * self.words];
            row[i / 64] &= !(1 << (i % 64));
            if !self.n.is_multiple_of(64) {
                row[self.words - 1] &= (1u64 << (self.n % 64)) - 1;
            }
        }
        g
    }

    /// OR (disjunctive) product. Vertex `(i, j)` has index `i * h.n + j`;
    /// distinct pairs are adjacent iff `i ~ k` in `self` or `j ~ l` in `h`.
    pub fn or_product(&self, h: &Graph) -> Result<Self> {
        let size = self.n.saturating_mul(h.n);
        guard("OR product", size, Limits::current().product)?;
        let mut p = Self::edgeless(size)?;
        for a in 0..size {
            let (i, j) = (a / h.n, a % h.n);
            for b in a + 1..size {
                let (k, l) = (b / h.n, b % h.n);
                if self.adjacent(i, k) || h.adjacent(j, l) {
                    p.set(a, b);
                }
            }
        }
        Ok(p)
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(a, &i)| set[a + 1..].iter().all(|&j| i != j && !self.adjacent(i, j)))
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(a, &i)| set[a + 1..].iter().all(|&j| self.adjacent(i, j)))
    }

    /// Graph induced by relabelling vertex `i` as `map[i]`.
    pub fn permuted(&self, map: &VertexMap) -> Self {
        let mut g = Self::edgeless(self.n).expect("n >= 1");
        for (i, j) in self.edges() {
            g.set(map.apply(i), map.apply(j));
        }
        g
    }

    /// Hex digest identifying the labelled graph (vertex count and edge set).
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.n as u64).to_le_bytes());
        for (i, j) in self.edges() {
            hasher.update((i as u64).to_le_bytes());
            hasher.update((j as u64).to_le_bytes());
        }
        hasher
            .finalize()
            .iter()
            .take(8)
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c5() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn from_edges_builds_pentagon() {
        let g = c5();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.degrees(), vec![2; 5]);
        assert_eq!(g, Graph::cycle(5).unwrap());
    }

    #[test]
    fn from_edges_trivial_cases() {
        let g = Graph::from_edges(1, &[]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn from_edges_errors() {
        assert_eq!(Graph::from_edges(0, &[]), Err(Error::EmptyGraph));
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        );
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(Error::SelfLoop(1)));
    }

    #[test]
    fn complement_examples() {
        let k = Graph::complete(6).unwrap();
        assert_eq!(k.complement(), Graph::edgeless(6).unwrap());
        assert!(find_isomorphism(&c5(), &c5().complement())
            .unwrap()
            .is_some());

        // connection set {3,4} is {1,2,3,4} minus {1,2}; checked pairwise
        let ci = Graph::circulant(8, &[1, 2]).unwrap();
        let co = ci.complement();
        assert_eq!(co, Graph::circulant(8, &[3, 4]).unwrap());
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    let d = (i as i64 - j as i64)
                        .rem_euclid(8)
                        .min((j as i64 - i as i64).rem_euclid(8));
                    assert_eq!(co.adjacent(i, j), d == 3 || d == 4);
                }
            }
        }
    }

    #[test]
    fn circulant_examples() {
        let g = Graph::circulant(8, &[1, 2]).unwrap();
        assert_eq!(g.degrees(), vec![4; 8]);
        assert_eq!(g.edge_count(), 16);
        assert_eq!(Graph::circulant(5, &[1]).unwrap(), c5());
        let m = Graph::circulant(8, &[4]).unwrap();
        assert_eq!(m.edges(), vec![(0, 4), (1, 5), (2, 6), (3, 7)]);
        assert_eq!(
            Graph::circulant(8, &[5]),
            Err(Error::BadConnection {
                connection: 5,
                max: 4
            })
        );
        assert_eq!(Graph::circulant(0, &[]), Err(Error::EmptyGraph));
    }

    #[test]
    fn or_product_of_pentagons() {
        let p = c5().or_product(&c5()).unwrap();
        assert_eq!(p.vertex_count(), 25);
        // brute-force scan against the coordinate definition
        for a in 0..25 {
            let mut deg = 0;
            for b in 0..25 {
                if a == b {
                    continue;
                }
                let (i, j, k, l) = (a / 5, a % 5, b / 5, b % 5);
                let expect = c5().adjacent(i, k) || c5().adjacent(j, l);
                assert_eq!(p.adjacent(a, b), expect);
                deg += expect as usize;
            }
            // (i,j) ~ (i,l) whenever j ~ l, so the second term counts n_g - d_i rows
            assert_eq!(deg, 16);
            assert_eq!(p.degree(a), 2 * 5 + 2 * (5 - 2));
        }
    }

    #[test]
    fn or_product_identity_and_guard() {
        let k1 = Graph::edgeless(1).unwrap();
        let g = Graph::random(7, 0.4, 3).unwrap();
        assert_eq!(k1.or_product(&g).unwrap(), g);
        let big = Graph::edgeless(65).unwrap();
        assert!(matches!(big.or_product(&big), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn fingerprint_depends_on_edges_only() {
        assert_eq!(c5().fingerprint(), Graph::cycle(5).unwrap().fingerprint());
        assert_ne!(c5().fingerprint(), c5().complement().fingerprint());
        assert_eq!(c5().fingerprint().len(), 16);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n, 0.0..1.0f64, any::<u64>())
            .prop_map(|(n, p, seed)| Graph::random(n, p, seed).unwrap())
    }

    proptest! {
        #[test]
        fn complement_is_an_involution(g in arb_graph(64)) {
            let c = g.complement();
            prop_assert_eq!(c.complement(), g.clone());
            let n = g.vertex_count();
            prop_assert_eq!(g.edge_count() + c.edge_count(), n * (n - 1) / 2);
            for i in 0..n {
                prop_assert!(!c.adjacent(i, i));
            }
        }

        #[test]
        fn or_product_degree_formula(g in arb_graph(8), h in arb_graph(8)) {
            let p = g.or_product(&h).unwrap();
            let (ng, nh) = (g.vertex_count(), h.vertex_count());
            for i in 0..ng {
                for j in 0..nh {
                    let (di, dj) = (g.degree(i), h.degree(j));
                    prop_assert_eq!(p.degree(i * nh + j), di * nh + dj * (ng - di));
                }
            }
        }

        #[test]
        fn or_product_commutes_up_to_isomorphism(g in arb_graph(4), h in arb_graph(4)) {
            let a = g.or_product(&h).unwrap();
            let b = h.or_product(&g).unwrap();
            let map = find_isomorphism(&a, &b).unwrap();
            prop_assert!(map.is_some());
        }
    }
}
