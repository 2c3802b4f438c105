//! Exhaustive searches over an explicitly enumerated permutation group:
//! minimum determining sets, minimum 2-distinguishing colour classes and
//! minimum distinguishing colourings.
//!
//! Each nontrivial element is bucketed by the largest vertex it moves. The
//! searches decide vertices in index order, so an element can be settled the
//! moment its last moved vertex is decided.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::Perm;

pub const MAX_SEARCH_VERTICES: usize = 128;
const BOUND_FAMILY: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 100_000_000 }
    }
}

#[derive(Debug, Clone, Copy)]
struct Elem {
    support: u128,
    last: usize,
    offset: usize,
}

/// The nontrivial elements of a group in search-friendly form.
#[derive(Debug, Clone)]
pub struct IndexedGroup {
    nv: usize,
    images: Vec<u8>,
    elems: Vec<Elem>,
    /// `bucket_start[m]` is the first element whose last moved vertex is `m`.
    bucket_start: Vec<usize>,
    /// Small disjoint-support candidates for the lower bound.
    family: Vec<u128>,
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

fn set_mask(set: &[usize]) -> u128 {
    set.iter().fold(0, |m, &v| m | 1 << v)
}

impl IndexedGroup {
    pub fn new(vertex_count: usize, perms: &[Perm]) -> Result<Self> {
        let nv = vertex_count;
        if nv > MAX_SEARCH_VERTICES {
            return Err(Error::BudgetExceeded { what: "search vertex count", limit: MAX_SEARCH_VERTICES as u64 });
        }
        let mut raw: Vec<(u128, &Perm)> = Vec::new();
        for p in perms {
            if p.len() != nv {
                return Err(Error::ContextMismatch("permutation length differs from the vertex count"));
            }
            let support = (0..nv).filter(|&v| p.apply(v) != v).fold(0u128, |m, v| m | 1 << v);
            if support != 0 {
                raw.push((support, p));
            }
        }
        raw.sort_by_key(|&(s, _)| 127 - s.leading_zeros() as usize);
        let mut images = Vec::with_capacity(raw.len() * nv);
        let mut elems = Vec::with_capacity(raw.len());
        for (support, p) in &raw {
            elems.push(Elem { support: *support, last: 127 - support.leading_zeros() as usize, offset: images.len() });
            images.extend(p.as_slice().iter().map(|&x| x as u8));
        }
        let mut bucket_start = alloc::vec![elems.len(); nv + 1];
        for (k, e) in elems.iter().enumerate().rev() {
            bucket_start[e.last] = k;
        }
        for m in (0..nv).rev() {
            bucket_start[m] = bucket_start[m].min(bucket_start[m + 1]);
        }
        let mut supports: Vec<u128> = elems.iter().map(|e| e.support).collect();
        supports.sort_by_key(|s| (s.count_ones(), *s));
        supports.dedup();
        supports.truncate(BOUND_FAMILY);
        Ok(IndexedGroup { nv, images, elems, bucket_start, family: supports })
    }

    pub fn vertex_count(&self) -> usize {
        self.nv
    }

    /// Number of nontrivial elements.
    pub fn nontrivial_count(&self) -> usize {
        self.elems.len()
    }

    fn img(&self, e: &Elem, x: usize) -> usize {
        self.images[e.offset + x] as usize
    }

    fn bucket(&self, m: usize) -> &[Elem] {
        &self.elems[self.bucket_start[m]..self.bucket_start[m + 1]]
    }

    fn preserves_set(&self, e: &Elem, set: u128) -> bool {
        bits(set & e.support).all(|x| set >> self.img(e, x) & 1 == 1)
    }

    fn preserves_coloring(&self, e: &Elem, colors: &[u8]) -> bool {
        bits(e.support).all(|x| colors[self.img(e, x)] == colors[x])
    }

    /// Only the identity fixes `set` pointwise.
    pub fn is_determining(&self, set: &[usize]) -> bool {
        let m = set_mask(set);
        self.elems.iter().all(|e| e.support & m != 0)
    }

    /// Only the identity maps `set` onto itself.
    pub fn is_distinguishing_class(&self, set: &[usize]) -> bool {
        let m = set_mask(set);
        self.elems.iter().all(|e| !self.preserves_set(e, m))
    }

    /// Only the identity preserves every colour class.
    pub fn is_distinguishing_coloring(&self, colors: &[usize]) -> bool {
        if colors.len() != self.nv || colors.iter().any(|&c| c > u8::MAX as usize) {
            return false;
        }
        let c: Vec<u8> = colors.iter().map(|&x| x as u8).collect();
        self.elems.iter().all(|e| !self.preserves_coloring(e, &c))
    }

    /// The smallest determining set, lexicographically least at that size.
    pub fn min_determining_set(&self, budget: &SearchBudget) -> Result<Vec<usize>> {
        let mut nodes = 0;
        for c in 0..=self.nv {
            if let Some(w) = self.subset_search(Goal::Determining, c, budget, &mut nodes)? {
                return Ok(w);
            }
        }
        Err(Error::InvariantViolation(alloc::string::String::from("the full vertex set is not determining")))
    }

    /// The smallest set with trivial setwise stabilizer and size at most
    /// `max_size`, lexicographically least at that size.
    pub fn min_distinguishing_class(&self, max_size: usize, budget: &SearchBudget) -> Result<Option<Vec<usize>>> {
        let mut nodes = 0;
        for c in 0..=max_size.min(self.nv) {
            if let Some(r) = self.subset_search(Goal::Class, c, budget, &mut nodes)? {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }

    /// The distinguishing number with a witness colouring (colours `0..d`,
    /// first occurrences in increasing order).
    pub fn distinguishing_number(&self, budget: &SearchBudget) -> Result<(usize, Vec<usize>)> {
        if self.elems.is_empty() {
            return Ok((1, alloc::vec![0; self.nv]));
        }
        if let Some(r) = self.min_distinguishing_class(self.nv / 2, budget)? {
            let first = r.first() == Some(&0);
            let colors = (0..self.nv).map(|v| usize::from(r.contains(&v) != first)).collect();
            return Ok((2, colors));
        }
        let mut nodes = 0;
        for d in 3..=self.nv {
            let mut colors = alloc::vec![0u8; self.nv];
            if self.coloring_search(0, 0, d as u8, &mut colors, budget, &mut nodes)? {
                return Ok((d, colors.into_iter().map(usize::from).collect()));
            }
        }
        Err(Error::InvariantViolation(alloc::string::String::from("no distinguishing colouring with |V| colours")))
    }

    fn subset_search(&self, goal: Goal, c: usize, budget: &SearchBudget, nodes: &mut u64) -> Result<Option<Vec<usize>>> {
        let mut state = SubsetState { goal, c, budget: budget.max_nodes, nodes };
        let found = self.subset_dfs(&mut state, 0, 0, 0);
        if found.is_none() && *state.nodes > budget.max_nodes {
            return Err(Error::BudgetExceeded { what: "subset search nodes", limit: budget.max_nodes });
        }
        Ok(found.map(|m| bits(m).collect()))
    }

    fn broken(&self, goal: Goal, e: &Elem, set: u128) -> bool {
        match goal {
            Goal::Determining => e.support & set != 0,
            Goal::Class => !self.preserves_set(e, set),
        }
    }

    fn subset_dfs(&self, st: &mut SubsetState<'_>, m: usize, set: u128, count: usize) -> Option<u128> {
        *st.nodes += 1;
        if *st.nodes > st.budget {
            return None;
        }
        if count == st.c {
            let from = self.bucket_start[m.min(self.nv)];
            return self.elems[from..].iter().all(|e| self.broken(st.goal, e, set)).then_some(set);
        }
        if m == self.nv || count + (self.nv - m) < st.c {
            return None;
        }
        let undecided = !0u128 << m;
        let mut used = 0u128;
        let mut lb = 0;
        for &s in &self.family {
            if s & set != 0 {
                continue;
            }
            let rest = s & undecided;
            if rest == 0 {
                return None;
            }
            if rest & used == 0 {
                used |= rest;
                lb += 1;
            }
        }
        if count + lb > st.c {
            return None;
        }
        for take in [true, false] {
            let next = if take { set | 1 << m } else { set };
            if self.bucket(m).iter().all(|e| self.broken(st.goal, e, next)) {
                if let Some(found) = self.subset_dfs(st, m + 1, next, count + usize::from(take)) {
                    return Some(found);
                }
            }
            if *st.nodes > st.budget {
                return None;
            }
        }
        None
    }

    fn coloring_search(
        &self,
        m: usize,
        used_colors: u8,
        d: u8,
        colors: &mut [u8],
        budget: &SearchBudget,
        nodes: &mut u64,
    ) -> Result<bool> {
        if m == self.nv {
            return Ok(true);
        }
        let top = if m == 0 { 1 } else { (used_colors + 1).min(d) };
        for col in 0..top {
            *nodes += 1;
            if *nodes > budget.max_nodes {
                return Err(Error::BudgetExceeded { what: "colouring search nodes", limit: budget.max_nodes });
            }
            colors[m] = col;
            if self.bucket(m).iter().any(|e| self.preserves_coloring(e, colors)) {
                continue;
            }
            let used = used_colors.max(col + 1);
            if self.coloring_search(m + 1, used, d, colors, budget, nodes)? {
                return Ok(true);
            }
        }
        colors[m] = 0;
        Ok(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Goal {
    Determining,
    Class,
}

struct SubsetState<'a> {
    goal: Goal,
    c: usize,
    budget: u64,
    nodes: &'a mut u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute::{brute_automorphisms, Budget};
    use crate::circulant::{build, CirculantSpec};
    use alloc::vec;

    fn group(n: usize, i: usize, j: usize) -> IndexedGroup {
        let g = build(&CirculantSpec::new(n, i, j).unwrap());
        IndexedGroup::new(n, &brute_automorphisms(&g, &Budget::default()).unwrap().perms).unwrap()
    }

    #[test]
    fn determining_examples() {
        let b = SearchBudget::default();
        assert_eq!(group(7, 1, 2).min_determining_set(&b).unwrap(), vec![0, 1]);
        assert_eq!(group(6, 1, 3).min_determining_set(&b).unwrap().len(), 4);
        assert_eq!(group(12, 1, 5).min_determining_set(&b).unwrap(), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn class_examples() {
        let b = SearchBudget::default();
        assert_eq!(group(7, 1, 2).min_distinguishing_class(3, &b).unwrap().unwrap().len(), 3);
        assert_eq!(group(6, 1, 3).min_distinguishing_class(3, &b).unwrap(), None);
    }

    #[test]
    fn distinguishing_examples() {
        let b = SearchBudget::default();
        assert_eq!(group(8, 1, 3).distinguishing_number(&b).unwrap().0, 5);
        assert_eq!(group(10, 1, 3).distinguishing_number(&b).unwrap().0, 3);
        assert_eq!(group(5, 1, 2).distinguishing_number(&b).unwrap().0, 5);
        let (d, c) = group(13, 1, 5).distinguishing_number(&b).unwrap();
        assert_eq!(d, 2);
        assert!(group(13, 1, 5).is_distinguishing_coloring(&c));
    }

    #[test]
    fn trivial_group() {
        let g = IndexedGroup::new(3, &[Perm::identity(3)]).unwrap();
        let b = SearchBudget::default();
        assert_eq!(g.min_determining_set(&b).unwrap(), Vec::<usize>::new());
        assert_eq!(g.distinguishing_number(&b).unwrap().0, 1);
    }
}
