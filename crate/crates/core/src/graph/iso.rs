//! Backtracking isomorphism search for small graphs, pruned by degree and
//! neighbour-degree multisets, plus vertex-transitivity built on top of it.

use super::Graph;
use crate::error::{Error, Result};
use crate::limits::{guard, Limits};

/// A permutation of `0..n`; `apply(i)` is the image of vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap(Vec<usize>);

impl VertexMap {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::NotPermutation(n));
            }
            seen[p] = true;
        }
        Ok(Self(perm))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// True when `adjacency_g(i, j) == adjacency_h(π(i), π(j))` for all pairs.
    pub fn is_isomorphism(&self, g: &Graph, h: &Graph) -> bool {
        let n = g.vertex_count();
        if self.len() != n || h.vertex_count() != n {
            return false;
        }
        (0..n).all(|i| (i + 1..n).all(|j| g.adjacent(i, j) == h.adjacent(self.0[i], self.0[j])))
    }
}

fn signatures(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    let deg = g.degrees();
    (0..g.vertex_count())
        .map(|i| {
            let mut nd: Vec<usize> = g.neighbors(i).map(|j| deg[j]).collect();
            nd.sort_unstable();
            (deg[i], nd)
        })
        .collect()
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    sig_g: Vec<(usize, Vec<usize>)>,
    sig_h: Vec<(usize, Vec<usize>)>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn consistent(&self, i: usize, cand: usize) -> bool {
        (0..i).all(|k| self.g.adjacent(i, k) == self.h.adjacent(cand, self.map[k]))
    }

    fn extend(&mut self, i: usize) -> bool {
        let n = self.g.vertex_count();
        if i == n {
            return true;
        }
        for cand in 0..n {
            if self.used[cand] || self.sig_g[i] != self.sig_h[cand] || !self.consistent(i, cand) {
                continue;
            }
            self.map[i] = cand;
            self.used[cand] = true;
            if self.extend(i + 1) {
                return true;
            }
            self.used[cand] = false;
        }
        false
    }
}

fn search(g: &Graph, h: &Graph, fix_zero_to: Option<usize>) -> Option<VertexMap> {
    let n = g.vertex_count();
    if h.vertex_count() != n || g.edge_count() != h.edge_count() {
        return None;
    }
    let sig_g = signatures(g);
    let sig_h = signatures(h);
    let mut sorted_g = sig_g.clone();
    let mut sorted_h = sig_h.clone();
    sorted_g.sort();
    sorted_h.sort();
    if sorted_g != sorted_h {
        return None;
    }
    let mut s = Search {
        g,
        h,
        sig_g,
        sig_h,
        map: vec![0; n],
        used: vec![false; n],
    };
    let found = match fix_zero_to {
        Some(v) => {
            if s.sig_g[0] != s.sig_h[v] {
                return None;
            }
            s.map[0] = v;
            s.used[v] = true;
            s.extend(1)
        }
        None => s.extend(0),
    };
    found.then_some(VertexMap(s.map))
}

/// Finds `π` with `adjacency_g(i, j) == adjacency_h(π(i), π(j))`, or `None`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Result<Option<VertexMap>> {
    let n = g.vertex_count().max(h.vertex_count());
    guard("isomorphism search", n, Limits::current().isomorphism)?;
    Ok(search(g, h, None))
}

/// True when `i -> i + 1 (mod n)` is an automorphism, i.e. the labelling is
/// circulant.
pub fn is_rotation_invariant(g: &Graph) -> bool {
    let n = g.vertex_count();
    (0..n).all(|i| (i + 1..n).all(|j| g.adjacent(i, j) == g.adjacent((i + 1) % n, (j + 1) % n)))
}

/// True iff every vertex is the image of vertex 0 under some automorphism.
/// Circulant labellings answer immediately; other graphs are searched under
/// the transitivity size guard.
pub fn is_vertex_transitive(g: &Graph) -> Result<bool> {
    if is_rotation_invariant(g) {
        return Ok(true);
    }
    let n = g.vertex_count();
    guard(
        "vertex-transitivity search",
        n,
        Limits::current().transitivity,
    )?;
    Ok((0..n).all(|v| search(g, g, Some(v)).is_some()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pentagon_is_self_complementary() {
        let c5 = Graph::cycle(5).unwrap();
        let co = c5.complement();
        let map = find_isomorphism(&c5, &co)
            .unwrap()
            .expect("self-complementary");
        assert!(map.is_isomorphism(&c5, &co));
    }

    #[test]
    fn triangle_identity_and_c4_mismatch() {
        let k3 = Graph::complete(3).unwrap();
        let c3 = Graph::cycle(3).unwrap();
        let map = find_isomorphism(&k3, &c3).unwrap().unwrap();
        assert_eq!(map, VertexMap::identity(3));
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(find_isomorphism(&c4, &c4.complement()).unwrap(), None);
    }

    #[test]
    fn isomorphism_guard() {
        let g = Graph::edgeless(17).unwrap();
        assert!(matches!(
            find_isomorphism(&g, &g),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn vertex_map_validation() {
        assert!(VertexMap::new(vec![2, 0, 1]).is_ok());
        assert_eq!(VertexMap::new(vec![0, 0, 1]), Err(Error::NotPermutation(3)));
        assert_eq!(VertexMap::new(vec![0, 3, 1]), Err(Error::NotPermutation(3)));
    }

    #[test]
    fn transitivity_examples() {
        assert!(is_vertex_transitive(&Graph::cycle(5).unwrap()).unwrap());
        assert!(!is_vertex_transitive(&Graph::path(4).unwrap()).unwrap());
        let chsh = Graph::circulant(8, &[1, 2]).unwrap().complement();
        assert!(is_rotation_invariant(&chsh));
        assert!(is_vertex_transitive(&chsh).unwrap());
        // relabelled so the rotation shortcut does not fire: full search
        let map = VertexMap::new(vec![3, 0, 6, 1, 7, 2, 5, 4]).unwrap();
        let shuffled = chsh.permuted(&map);
        assert!(!is_rotation_invariant(&shuffled));
        assert!(is_vertex_transitive(&shuffled).unwrap());
        // Petersen graph: vertex-transitive but not a circulant
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        assert!(is_vertex_transitive(&petersen).unwrap());
        // star: not transitive
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(!is_vertex_transitive(&star).unwrap());
    }

    proptest! {
        #[test]
        fn found_maps_validate(n in 1usize..9, p in 0.0..1.0f64, seed: u64, perm_seed: u64) {
            let g = Graph::random(n, p, seed).unwrap();
            // random relabelling via sort by hashed key
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by_key(|&i| (i as u64 + 1).wrapping_mul(perm_seed | 1).rotate_left(17));
            let h = g.permuted(&VertexMap::new(idx).unwrap());
            let map = find_isomorphism(&g, &h).unwrap();
            prop_assert!(map.is_some());
            prop_assert!(map.unwrap().is_isomorphism(&g, &h));
        }
    }
}
