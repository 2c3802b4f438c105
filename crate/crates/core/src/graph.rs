//! Immutable undirected graphs, twins, co-twins and the twin quotient.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Repeated edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = labels.len();
        let mut adjacency = alloc::vec![Vec::new(); n];
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, vertex_count: n });
                }
            }
            if a == b {
                return Err(Error::InvariantViolation(alloc::format!("self-loop at vertex {a}")));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { labels, adjacency })
    }

    /// A graph with vertices labelled `0..n`.
    pub fn with_numeric_labels(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Graph::from_edges((0..n).map(|v| v.to_string()).collect(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, vertex_count: self.vertex_count() })
        }
    }

    /// Sorted open neighbourhood `N(v)`.
    pub fn neighbors(&self, v: usize) -> Result<&[usize]> {
        self.check(v)?;
        Ok(&self.adjacency[v])
    }

    /// Sorted closed neighbourhood `N[v]`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<Vec<usize>> {
        self.check(v)?;
        Ok(closed(&self.adjacency[v], v))
    }

    /// Unchecked neighbour slice, for hot loops over known-valid vertices.
    pub fn adj(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.vertex_count() && self.adjacency[a].binary_search(&b).is_ok()
    }

    /// All edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    /// Whether `perm` (image of each vertex) is an automorphism.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.vertex_count();
        if perm.len() != n {
            return false;
        }
        let mut seen = alloc::vec![false; n];
        for &x in perm {
            if x >= n || core::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        self.edges().into_iter().all(|(a, b)| self.has_edge(perm[a], perm[b]))
    }

    pub fn is_regular(&self) -> Option<usize> {
        let d = self.adjacency.first().map_or(0, Vec::len);
        self.adjacency.iter().all(|l| l.len() == d).then_some(d)
    }
}

fn closed(open: &[usize], v: usize) -> Vec<usize> {
    let mut c = Vec::with_capacity(open.len() + 1);
    c.extend_from_slice(open);
    let pos = c.binary_search(&v).unwrap_or_else(|p| p);
    c.insert(pos, v);
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwinKind {
    Adjacent,
    Nonadjacent,
    Singleton,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPartition {
    /// Classes, each sorted, ordered by minimum member.
    pub classes: Vec<Vec<usize>>,
    pub kinds: Vec<TwinKind>,
    pub class_of: Vec<usize>,
}

impl TwinPartition {
    pub fn is_twin_free(&self) -> bool {
        self.kinds.iter().all(|&k| k == TwinKind::Singleton)
    }

    pub fn nontrivial_classes(&self) -> impl Iterator<Item = &[usize]> {
        self.classes.iter().filter(|c| c.len() > 1).map(Vec::as_slice)
    }

    /// Common class size, if all classes have the same size.
    pub fn uniform_size(&self) -> Option<usize> {
        let k = self.classes.first()?.len();
        self.classes.iter().all(|c| c.len() == k).then_some(k)
    }
}

fn group_by_key(g: &Graph, key: impl Fn(usize) -> Vec<usize>) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let mut map: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in 0..g.vertex_count() {
        map.entry(key(v)).or_default().push(v);
    }
    map
}

pub fn twin_partition(g: &Graph) -> TwinPartition {
    let n = g.vertex_count();
    let mut class_of = alloc::vec![usize::MAX; n];
    let mut found: Vec<(Vec<usize>, TwinKind)> = Vec::new();
    let open = group_by_key(g, |v| g.adj(v).to_vec());
    let closed_map = group_by_key(g, |v| closed(g.adj(v), v));
    for (members, kind) in open
        .into_values()
        .map(|m| (m, TwinKind::Nonadjacent))
        .chain(closed_map.into_values().map(|m| (m, TwinKind::Adjacent)))
    {
        if members.len() > 1 {
            found.push((members, kind));
        }
    }
    for (members, _) in &found {
        for &v in members {
            debug_assert_eq!(class_of[v], usize::MAX, "vertex with both kinds of twin");
            class_of[v] = 0;
        }
    }
    for (v, &c) in class_of.iter().enumerate() {
        if c == usize::MAX {
            found.push((alloc::vec![v], TwinKind::Singleton));
        }
    }
    found.sort_by_key(|(m, _)| m[0]);
    for (idx, (members, _)) in found.iter().enumerate() {
        for &v in members {
            class_of[v] = idx;
        }
    }
    let (classes, kinds) = found.into_iter().unzip();
    TwinPartition { classes, kinds, class_of }
}

/// All pairs `{u, v}`, `u < v`, with `N[u]` equal to the complement of `N[v]`.
pub fn co_twin_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if g.degree(u) + g.degree(v) + 2 != n {
                continue;
            }
            let nu = closed(g.adj(u), u);
            let nv = closed(g.adj(v), v);
            if nu.iter().all(|x| nv.binary_search(x).is_err()) {
                out.push((u, v));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinQuotient {
    pub quotient: Graph,
    pub class_map: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub uniform_k: Option<usize>,
}

/// Quotient by the twin relation. Quotient vertex `c` is the class with the
/// `c`-th smallest minimum member and is labelled `[label of that member]`.
pub fn twin_quotient(g: &Graph) -> TwinQuotient {
    let part = twin_partition(g);
    let mut edges = Vec::new();
    for (a, b) in g.edges() {
        let (ca, cb) = (part.class_of[a], part.class_of[b]);
        if ca != cb {
            edges.push((ca.min(cb), ca.max(cb)));
        }
    }
    let labels = part.classes.iter().map(|c| alloc::format!("[{}]", g.label(c[0]))).collect();
    let quotient = Graph::from_edges(labels, edges).expect("quotient edges are in range and loop-free");
    TwinQuotient { uniform_k: part.uniform_size(), class_map: part.class_of, classes: part.classes, quotient }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn circ(n: usize, gens: &[usize]) -> Graph {
        let mut edges = Vec::new();
        for a in 0..n {
            for &g in gens {
                edges.push((a, (a + g) % n));
            }
        }
        Graph::with_numeric_labels(n, edges).unwrap()
    }

    #[test]
    fn neighborhoods() {
        let g = circ(10, &[1, 4]);
        assert_eq!(g.neighbors(0).unwrap(), &[1, 4, 6, 9]);
        let g = circ(6, &[1, 3]);
        assert_eq!(g.neighbors(0).unwrap(), &[1, 3, 5]);
        assert_eq!(g.closed_neighborhood(2).unwrap(), vec![1, 2, 3, 5]);
        assert!(g.neighbors(6).is_err());
    }

    #[test]
    fn twin_examples() {
        let p = twin_partition(&circ(6, &[1, 3]));
        assert_eq!(p.classes, vec![vec![0, 2, 4], vec![1, 3, 5]]);
        assert_eq!(p.kinds, vec![TwinKind::Nonadjacent; 2]);

        let p = twin_partition(&circ(4, &[1, 2]));
        assert_eq!(p.classes, vec![vec![0, 1, 2, 3]]);
        assert_eq!(p.kinds, vec![TwinKind::Adjacent]);

        assert!(twin_partition(&circ(7, &[1, 2])).is_twin_free());
    }

    #[test]
    fn co_twin_examples() {
        assert_eq!(co_twin_pairs(&circ(10, &[1, 3])), vec![(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)]);
        assert!(co_twin_pairs(&circ(7, &[1, 2])).is_empty());
        assert!(co_twin_pairs(&circ(4, &[1, 2])).is_empty());
    }

    #[test]
    fn quotient_examples() {
        let q = twin_quotient(&circ(6, &[1, 3]));
        assert_eq!(q.uniform_k, Some(3));
        assert_eq!(q.quotient.edges(), vec![(0, 1)]);

        let q = twin_quotient(&circ(12, &[1, 5]));
        assert_eq!(q.uniform_k, Some(2));
        assert_eq!(q.quotient.vertex_count(), 6);
        assert_eq!(q.quotient.is_regular(), Some(2));

        let g = circ(7, &[1, 2]);
        let q = twin_quotient(&g);
        assert_eq!(q.uniform_k, Some(1));
        assert_eq!(q.quotient.edges(), g.edges());
    }

    #[test]
    fn automorphism_check() {
        let g = circ(7, &[1, 2]);
        let rot: Vec<usize> = (0..7).map(|a| (a + 1) % 7).collect();
        assert!(g.is_automorphism(&rot));
        let dbl: Vec<usize> = (0..7).map(|a| (2 * a) % 7).collect();
        assert!(!g.is_automorphism(&dbl));
    }
}
