use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::limits::{guard, Limits};

/// All maximal cliques of a graph, each sorted ascending, listed in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSet {
    pub cliques: Vec<Vec<usize>>,
    pub source_graph_fingerprint: String,
}

impl CliqueSet {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.cliques.iter().map(Vec::as_slice)
    }
}

/// Bron–Kerbosch with Tomita pivoting: the pivot maximises `|P ∩ N(u)|`
/// over `P ∪ X`, ties going to the smallest index.
pub fn maximal_cliques(g: &Graph) -> Result<CliqueSet> {
    let n = g.vertex_count();
    guard("maximal clique enumeration", n, Limits::current().cliques)?;
    let mut out = Vec::new();
    let mut r = Vec::new();
    expand(g, &mut r, VertexSet::full(n), VertexSet::empty(n), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    Ok(CliqueSet {
        cliques: out,
        source_graph_fingerprint: g.fingerprint(),
    })
}

fn expand(
    g: &Graph,
    r: &mut Vec<usize>,
    mut p: VertexSet,
    mut x: VertexSet,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let mut pivot = None;
    let mut best = 0;
    for u in p.iter().chain(x.iter()) {
        let k = p.intersection_len(g.row(u));
        if pivot.is_none() || k > best || (k == best && Some(u) < pivot) {
            pivot = Some(u);
            best = k;
        }
    }
    let pivot = pivot.expect("P is non-empty");
    let branch: Vec<usize> = p.difference(g.row(pivot)).iter().collect();
    for v in branch {
        r.push(v);
        expand(
            g,
            r,
            p.intersection(g.row(v)),
            x.intersection(g.row(v)),
            out,
        );
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}
