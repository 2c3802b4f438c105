//! Backtracking automorphism enumeration, used as the oracle for every
//! closed-form group.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::Perm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_vertices: usize,
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_vertices: 60, max_nodes: 100_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroupRaw {
    /// Every automorphism, in the order the search found them (identity first).
    pub perms: Vec<Perm>,
}

impl PermGroupRaw {
    pub fn order(&self) -> u64 {
        self.perms.len() as u64
    }
}

/// Vertices must fit in one `u128` bitset per row.
const MAX_BITSET_VERTICES: usize = 128;

struct Search<'a> {
    adj: Vec<u128>,
    cell: Vec<usize>,
    order: Vec<usize>,
    parent: Vec<Option<usize>>,
    graph: &'a Graph,
    image: Vec<usize>,
    used: u128,
    nodes: u64,
    max_nodes: u64,
    found: Vec<Perm>,
}

impl Search<'_> {
    fn consistent(&self, depth: usize, v: usize, x: usize) -> bool {
        self.order[..depth].iter().all(|&w| {
            let y = self.image[w];
            (self.adj[v] >> w & 1) == (self.adj[x] >> y & 1)
        })
    }

    fn run(&mut self, depth: usize) -> Result<()> {
        let n = self.order.len();
        if depth == n {
            self.found.push(Perm(self.image.clone()));
            return Ok(());
        }
        let v = self.order[depth];
        let candidates: Vec<usize> = match self.parent[v] {
            Some(par) => self.graph.adj(self.image[par]).to_vec(),
            None => (0..n).collect(),
        };
        for x in candidates {
            if self.used >> x & 1 == 1 || self.cell[x] != self.cell[v] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::BudgetExceeded { what: "brute-force search nodes", limit: self.max_nodes });
            }
            if !self.consistent(depth, v, x) {
                continue;
            }
            self.image[v] = x;
            self.used |= 1 << x;
            self.run(depth + 1)?;
            self.used &= !(1 << x);
        }
        Ok(())
    }
}

/// Enumerates `Aut(G)` exactly. Vertices are mapped in breadth-first order;
/// a vertex with an already-mapped parent can only go to a neighbour of the
/// parent's image. Candidates must share the (degree, neighbour-degree
/// multiset) cell and be consistent with every earlier assignment.
pub fn brute_automorphisms(g: &Graph, budget: &Budget) -> Result<PermGroupRaw> {
    let n = g.vertex_count();
    let limit = budget.max_vertices.min(MAX_BITSET_VERTICES);
    if n > limit {
        return Err(Error::BudgetExceeded { what: "brute-force vertex count", limit: limit as u64 });
    }
    let adj: Vec<u128> = (0..n).map(|v| g.adj(v).iter().fold(0u128, |m, &w| m | 1 << w)).collect();

    let mut keys: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    let cell: Vec<usize> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.adj(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            let next = keys.len();
            *keys.entry((g.degree(v), nd)).or_insert(next)
        })
        .collect();

    let mut order = Vec::with_capacity(n);
    let mut parent = alloc::vec![None; n];
    let mut seen = alloc::vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.adj(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
    }

    let mut search = Search {
        adj,
        cell,
        order,
        parent,
        graph: g,
        image: alloc::vec![0; n],
        used: 0,
        nodes: 0,
        max_nodes: budget.max_nodes,
        found: Vec::new(),
    };
    search.run(0)?;
    let mut perms = search.found;
    if let Some(pos) = perms.iter().position(Perm::is_identity) {
        perms[..=pos].rotate_right(1);
    }
    Ok(PermGroupRaw { perms })
}

/// Elements `g` with `g(S) = S`.
pub fn setwise_stabilizer<'a>(perms: &'a [Perm], set: &[usize]) -> Vec<&'a Perm> {
    let n = perms.first().map_or(0, Perm::len);
    let mut member = alloc::vec![false; n];
    for &v in set {
        member[v] = true;
    }
    perms.iter().filter(|p| set.iter().all(|&v| member[p.apply(v)])).collect()
}

/// Elements fixing every vertex of `set`.
pub fn pointwise_stabilizer<'a>(perms: &'a [Perm], set: &[usize]) -> Vec<&'a Perm> {
    perms.iter().filter(|p| set.iter().all(|&v| p.apply(v) == v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::{build, CirculantSpec};
    use crate::group::{closed_form_group, GroupElement};
    use crate::spec::GraphSpec;

    fn graph(n: usize, i: usize, j: usize) -> Graph {
        build(&CirculantSpec::new(n, i, j).unwrap())
    }

    #[test]
    fn oracle_examples() {
        let b = Budget::default();
        assert_eq!(brute_automorphisms(&graph(6, 1, 3), &b).unwrap().order(), 72);
        assert_eq!(brute_automorphisms(&graph(10, 1, 3), &b).unwrap().order(), 240);
        assert_eq!(brute_automorphisms(&graph(7, 1, 2), &b).unwrap().order(), 14);
    }

    #[test]
    fn identity_first_and_all_automorphisms() {
        let g = graph(12, 2, 3);
        let raw = brute_automorphisms(&g, &Budget::default()).unwrap();
        assert!(raw.perms[0].is_identity());
        assert!(raw.perms.iter().all(|p| g.is_automorphism(p.as_slice())));
    }

    #[test]
    fn refuses_over_budget() {
        let g = graph(13, 1, 5);
        let err = brute_automorphisms(&g, &Budget { max_vertices: 12, max_nodes: 10 }).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        let err = brute_automorphisms(&g, &Budget { max_vertices: 60, max_nodes: 5 }).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn orbit_stabilizer() {
        for (n, i, j) in [(12, 1, 5), (10, 1, 3), (8, 1, 3), (12, 2, 3)] {
            let raw = brute_automorphisms(&graph(n, i, j), &Budget::default()).unwrap();
            let orbit: alloc::collections::BTreeSet<usize> = raw.perms.iter().map(|p| p.apply(0)).collect();
            let stab = pointwise_stabilizer(&raw.perms, &[0]).len() as u64;
            assert_eq!(orbit.len() as u64 * stab, raw.order());
        }
    }

    #[test]
    fn stabilizer_examples() {
        let raw = brute_automorphisms(&graph(7, 1, 2), &Budget::default()).unwrap();
        assert_eq!(setwise_stabilizer(&raw.perms, &[0, 1, 2, 3, 4, 5, 6]).len(), 14);
        let fix = pointwise_stabilizer(&raw.perms, &[0, 1]);
        assert_eq!(fix.len(), 1);
        assert!(fix[0].is_identity());

        let spec = GraphSpec::Base(CirculantSpec::new(10, 1, 4).unwrap());
        let group = closed_form_group(&spec).unwrap();
        let perms = group.perms().unwrap();
        let fixed: Vec<&GroupElement> = group
            .elements
            .iter()
            .zip(&perms)
            .filter(|(_, p)| p.apply(0) == 0 && !p.is_identity())
            .map(|(e, _)| e)
            .collect();
        assert!(fixed.iter().any(|e| matches!(e, GroupElement::FlipAffine { flips, .. } if flips.mask != 0)));
    }
}
