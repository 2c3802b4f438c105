//! Two-generator circulants `C_n(i, j)`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::zmod::{gcd, neg_mod, units, SpecialCondition, SpecialConditionSet};

/// A normalized triple `0 < i < j <= n/2`. The graph may be disconnected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CirculantSpec {
    n: usize,
    i: usize,
    j: usize,
}

impl CirculantSpec {
    /// Accepts only already-normalized triples.
    pub fn new(n: usize, i: usize, j: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidModulus(n));
        }
        if !(0 < i && i < j && 2 * j <= n) {
            return Err(Error::NormalizationRequired { n, i, j });
        }
        Ok(CirculantSpec { n, i, j })
    }

    /// Like [`CirculantSpec::new`] but also rejects disconnected triples.
    pub fn connected(n: usize, i: usize, j: usize) -> Result<Self> {
        let spec = CirculantSpec::new(n, i, j)?;
        spec.require_connected()?;
        Ok(spec)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn gcd(&self) -> usize {
        gcd(gcd(self.n, self.i), self.j)
    }

    pub fn is_connected(&self) -> bool {
        self.gcd() == 1
    }

    /// `j = n/2`, so the graph is 3-regular.
    pub fn is_half_j(&self) -> bool {
        2 * self.j == self.n
    }

    pub fn as_tuple(&self) -> (usize, usize, usize) {
        (self.n, self.i, self.j)
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        let g = self.gcd();
        if g == 1 {
            Ok(())
        } else {
            Err(Error::Disconnected { n: self.n, i: self.i, j: self.j, components: g })
        }
    }

    pub fn is(&self, n: usize, i: usize, j: usize) -> bool {
        (self.n, self.i, self.j) == (n, i, j)
    }
}

impl fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}({},{})", self.n, self.i, self.j)
    }
}

/// Replaces each generator `g` by `min(g, n - g)` and orders them.
pub fn normalize(n: usize, raw_i: usize, raw_j: usize) -> Result<CirculantSpec> {
    if n < 3 {
        return Err(Error::InvalidModulus(n));
    }
    let mut gens = [0usize; 2];
    for (slot, raw) in gens.iter_mut().zip([raw_i, raw_j]) {
        let g = raw % n;
        if g == 0 {
            return Err(Error::InvalidGenerator { n, generator: raw });
        }
        *slot = g.min(n - g);
    }
    let [a, b] = gens;
    if a == b {
        return Err(Error::DegenerateGenerators { n, i: raw_i, j: raw_j });
    }
    CirculantSpec::new(n, a.min(b), a.max(b))
}

/// Enumerates every normalized triple with `n` in the range, connected or not.
pub fn all_specs(n_min: usize, n_max: usize) -> impl Iterator<Item = CirculantSpec> {
    (n_min.max(4)..=n_max).flat_map(|n| {
        (1..=n / 2).flat_map(move |i| (i + 1..=n / 2).map(move |j| CirculantSpec { n, i, j }))
    })
}

pub fn connected_specs(n_min: usize, n_max: usize) -> impl Iterator<Item = CirculantSpec> {
    all_specs(n_min, n_max).filter(CirculantSpec::is_connected)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Connectivity {
    pub connected: bool,
    pub component_count: usize,
    /// The common isomorphism type of the components when disconnected.
    pub component_spec: Option<CirculantSpec>,
}

pub fn connectivity(spec: &CirculantSpec) -> Connectivity {
    let g = spec.gcd();
    Connectivity {
        connected: g == 1,
        component_count: g,
        component_spec: (g > 1)
            .then(|| normalize(spec.n / g, spec.i / g, spec.j / g).expect("component triple is valid")),
    }
}

pub fn build(spec: &CirculantSpec) -> Graph {
    let n = spec.n;
    let edges = (0..n).flat_map(|a| [(a, (a + spec.i) % n), (a, (a + spec.j) % n)]);
    Graph::with_numeric_labels(n, edges).expect("circulant edges are valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwinClass {
    /// `C_4(1,2)` or `C_5(1,2)`.
    CompleteGraph,
    Six13,
    Eight13,
    /// `i + j = n/2`, `n != 8`.
    HalfSum,
    CoTwin1013,
    TwinFree,
    /// `C_2j(i, j÷1)`: paired degree-2 vertices.
    SubdividedPairs,
}

impl TwinClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TwinClass::CompleteGraph => "CompleteGraph",
            TwinClass::Six13 => "Six13",
            TwinClass::Eight13 => "Eight13",
            TwinClass::HalfSum => "HalfSum",
            TwinClass::CoTwin1013 => "CoTwin1013",
            TwinClass::TwinFree => "TwinFree",
            TwinClass::SubdividedPairs => "SubdividedPairs",
        }
    }

    pub fn has_twins(self) -> bool {
        !matches!(self, TwinClass::TwinFree | TwinClass::CoTwin1013)
    }
}

impl fmt::Display for TwinClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinClassification {
    pub variant: TwinClass,
    /// Non-singleton twin classes, each sorted, ordered by minimum member.
    pub classes: Vec<Vec<usize>>,
    pub co_twin_pairs: Vec<(usize, usize)>,
}

pub(crate) fn twin_class_of(spec: &CirculantSpec) -> TwinClass {
    let (n, i, j) = spec.as_tuple();
    match (n, i, j) {
        (4, 1, 2) | (5, 1, 2) => TwinClass::CompleteGraph,
        (6, 1, 3) => TwinClass::Six13,
        (8, 1, 3) => TwinClass::Eight13,
        (10, 1, 3) => TwinClass::CoTwin1013,
        _ if 2 * (i + j) == n => TwinClass::HalfSum,
        _ => TwinClass::TwinFree,
    }
}

pub fn twin_classification(spec: &CirculantSpec) -> Result<TwinClassification> {
    spec.require_connected()?;
    let n = spec.n;
    let variant = twin_class_of(spec);
    let stride = |k: usize| -> Vec<Vec<usize>> {
        (0..k).map(|r| (r..n).step_by(k).collect()).collect()
    };
    let classes = match variant {
        TwinClass::CompleteGraph => alloc::vec![(0..n).collect()],
        TwinClass::Six13 | TwinClass::Eight13 => stride(2),
        TwinClass::HalfSum => stride(n / 2),
        _ => Vec::new(),
    };
    let co_twin_pairs = graph::co_twin_pairs(&build(spec));
    Ok(TwinClassification { variant, classes, co_twin_pairs })
}

pub fn is_edge_transitive(spec: &CirculantSpec) -> bool {
    let (n, i, j) = spec.as_tuple();
    if spec.is(4, 1, 2) || spec.is(6, 1, 3) {
        return true;
    }
    let Ok(u) = units(n) else { return false };
    u.elements.iter().any(|&k| {
        let Ok(s) = normalize(n, k * i % n, k * j % n) else { return false };
        if s.i != 1 {
            return false;
        }
        let sq = s.j * s.j % n;
        sq == 1 || sq == n - 1 || (n % 2 == 0 && n / 2 >= 3 && s.j == n / 2 - 1)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonNeighborReport {
    /// `b - a` reduced mod `n`.
    pub pair_offset: usize,
    pub neighbors: Vec<usize>,
}

/// Common neighbours of `a` and `a + offset` for a positive table offset, as
/// offsets relative to `a`.
fn table_row(spec: &CirculantSpec, which: Offset, conds: SpecialConditionSet) -> Vec<i64> {
    use SpecialCondition::*;
    let (i, j) = (spec.i as i64, spec.j as i64);
    let mut out = Vec::new();
    let mut add = |cond: Option<SpecialCondition>, xs: &[i64]| {
        if cond.is_none_or(|c| conds.contains(c)) {
            out.extend_from_slice(xs);
        }
    };
    match which {
        Offset::TwoI => {
            add(None, &[i]);
            add(Some(FourI), &[-i]);
            add(Some(ThreeIMinusJ), &[-i, -j]);
            add(Some(ThreeIJ), &[-i, j]);
        }
        Offset::TwoJ => {
            add(None, &[j]);
            add(Some(FourJ), &[-j]);
            add(Some(ThreeJMinusI), &[-i, -j]);
            add(Some(ThreeJI), &[i, -j]);
        }
        Offset::IPlusJ => {
            add(None, &[i, j]);
            add(Some(ThreeIMinusJ), &[-i]);
            add(Some(ThreeJMinusI), &[-j]);
        }
        Offset::IMinusJ => {
            add(None, &[i, -j]);
            add(Some(ThreeIJ), &[-i]);
            add(Some(ThreeJI), &[j]);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Offset {
    TwoI,
    TwoJ,
    IPlusJ,
    IMinusJ,
}

/// `N(a) ∩ N(b)` from the closed-form tables; `None` when empty.
pub fn common_neighbors_closed(spec: &CirculantSpec, a: usize, b: usize) -> Result<Option<CommonNeighborReport>> {
    spec.require_connected()?;
    if twin_class_of(spec).has_twins() {
        return Err(Error::WrongRegime("common-neighbour tables need a twin-free graph"));
    }
    let n = spec.n;
    if a >= n || b >= n {
        return Err(Error::VertexOutOfRange { vertex: a.max(b), vertex_count: n });
    }
    if a == b {
        return Err(Error::InvariantViolation(alloc::format!("common neighbours need distinct vertices, got {a} twice")));
    }
    let (i, j) = (spec.i as i64, spec.j as i64);
    let offsets: &[(Offset, i64)] = if spec.is_half_j() {
        &[(Offset::TwoI, 2 * i), (Offset::IPlusJ, i + j)]
    } else {
        &[(Offset::TwoI, 2 * i), (Offset::TwoJ, 2 * j), (Offset::IPlusJ, i + j), (Offset::IMinusJ, i - j)]
    };
    let conds = if spec.is_half_j() {
        SpecialConditionSet::default()
    } else {
        crate::zmod::special_conditions(n, spec.i, spec.j)?
    };
    let d = crate::zmod::reduce(b as i64 - a as i64, n);
    let mut set = Vec::new();
    for &(which, o) in offsets {
        let o = crate::zmod::reduce(o, n);
        for (matches, base) in [(d == o, a), (d == neg_mod(o, n), b)] {
            if matches {
                set.extend(
                    table_row(spec, which, conds)
                        .into_iter()
                        .map(|x| crate::zmod::reduce(base as i64 + x, n)),
                );
            }
        }
    }
    set.sort_unstable();
    set.dedup();
    Ok((!set.is_empty()).then_some(CommonNeighborReport { pair_offset: d, neighbors: set }))
}

/// Direct intersection `N(a) ∩ N(b)` on a built graph.
pub fn common_neighbors_direct(g: &Graph, a: usize, b: usize) -> Vec<usize> {
    let nb = g.adj(b);
    g.adj(a).iter().copied().filter(|x| nb.binary_search(x).is_ok()).collect()
}

/// Connected twin-free triples with `j < n/2`, `6 <= n <= n_max`, where at
/// least two special conditions hold. `C_10(1,3)` is included.
pub fn scan_double_special_conditions(n_max: usize) -> Vec<CirculantSpec> {
    connected_specs(6, n_max)
        .filter(|s| !s.is_half_j() && !twin_class_of(s).has_twins())
        .filter(|s| {
            SpecialCondition::ALL.iter().filter(|c| c.holds(s.n, s.i, s.j)).count() >= 2
        })
        .collect()
}

/// Twin classes of the built graph, computed directly.
pub fn direct_twin_classes(spec: &CirculantSpec) -> Vec<Vec<usize>> {
    graph::twin_partition(&build(spec)).nontrivial_classes().map(<[usize]>::to_vec).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn spec(n: usize, i: usize, j: usize) -> CirculantSpec {
        CirculantSpec::new(n, i, j).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(10, 9, 4).unwrap(), spec(10, 1, 4));
        assert_eq!(normalize(10, 4, 1).unwrap(), spec(10, 1, 4));
        assert_eq!(normalize(12, 7, 9).unwrap(), spec(12, 3, 5));
        assert!(matches!(normalize(10, 3, 7), Err(Error::DegenerateGenerators { .. })));
        assert!(matches!(normalize(10, 10, 7), Err(Error::InvalidGenerator { .. })));
    }

    #[test]
    fn connectivity_examples() {
        let c = connectivity(&spec(10, 2, 4));
        assert_eq!((c.connected, c.component_count), (false, 2));
        assert_eq!(c.component_spec, Some(spec(5, 1, 2)));
        assert!(connectivity(&spec(10, 1, 4)).connected);
        assert_eq!(connectivity(&spec(12, 3, 6)).component_spec, Some(spec(4, 1, 2)));
    }

    #[test]
    fn component_count_matches_graph() {
        for s in all_specs(4, 24) {
            let g = build(&s);
            let mut seen = vec![false; g.vertex_count()];
            let mut comps = 0;
            for start in 0..g.vertex_count() {
                if seen[start] {
                    continue;
                }
                comps += 1;
                let mut stack = vec![start];
                seen[start] = true;
                while let Some(v) = stack.pop() {
                    for &w in g.adj(v) {
                        if !core::mem::replace(&mut seen[w], true) {
                            stack.push(w);
                        }
                    }
                }
            }
            assert_eq!(comps, connectivity(&s).component_count, "{s}");
        }
    }

    #[test]
    fn build_examples() {
        let g = build(&spec(10, 1, 4));
        assert_eq!((g.vertex_count(), g.edge_count(), g.is_regular()), (10, 20, Some(4)));
        let g = build(&spec(6, 1, 3));
        assert_eq!((g.vertex_count(), g.edge_count(), g.is_regular()), (6, 9, Some(3)));
        let g = build(&spec(4, 1, 2));
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn degree_regularity() {
        for s in connected_specs(4, 40) {
            let d = if s.is_half_j() { 3 } else { 4 };
            assert_eq!(build(&s).is_regular(), Some(d), "{s}");
        }
    }

    #[test]
    fn twin_classification_examples() {
        let t = twin_classification(&spec(8, 1, 3)).unwrap();
        assert_eq!(t.variant, TwinClass::Eight13);
        assert_eq!(t.classes, vec![vec![0, 2, 4, 6], vec![1, 3, 5, 7]]);
        let t = twin_classification(&spec(14, 3, 4)).unwrap();
        assert_eq!(t.variant, TwinClass::HalfSum);
        assert_eq!(t.classes[0], vec![0, 7]);
        assert_eq!(twin_classification(&spec(13, 1, 5)).unwrap().variant, TwinClass::TwinFree);
        assert_eq!(twin_classification(&spec(6, 1, 2)).unwrap().variant, TwinClass::HalfSum);
        assert!(twin_classification(&spec(10, 2, 4)).is_err());
    }

    #[test]
    fn twin_classification_matches_graph() {
        for s in connected_specs(4, 40) {
            let t = twin_classification(&s).unwrap();
            assert_eq!(t.classes, direct_twin_classes(&s), "{s}");
            assert_eq!(t.co_twin_pairs, graph::co_twin_pairs(&build(&s)), "{s}");
        }
    }

    #[test]
    fn edge_transitive_examples() {
        assert!(is_edge_transitive(&spec(10, 1, 4)));
        assert!(is_edge_transitive(&spec(15, 1, 4)));
        assert!(!is_edge_transitive(&spec(12, 2, 3)));
        assert!(is_edge_transitive(&spec(6, 1, 3)));
    }

    #[test]
    fn twins_imply_edge_transitive() {
        for s in connected_specs(4, 60) {
            if twin_class_of(&s).has_twins() {
                assert!(is_edge_transitive(&s), "{s}");
            }
        }
    }

    #[test]
    fn common_neighbor_examples() {
        let r = common_neighbors_closed(&spec(13, 1, 5), 0, 9).unwrap().unwrap();
        assert_eq!(r.neighbors, vec![1, 8]);
        let r = common_neighbors_closed(&spec(12, 3, 5), 0, 6).unwrap().unwrap();
        assert_eq!(r.neighbors, vec![3, 9]);
        let r = common_neighbors_closed(&spec(12, 3, 5), 0, 10).unwrap().unwrap();
        assert_eq!(r.neighbors, vec![3, 5, 7]);
        let r = common_neighbors_closed(&spec(13, 1, 5), 0, 6).unwrap().unwrap();
        assert_eq!(r.neighbors, vec![1, 5]);
        assert!(matches!(common_neighbors_closed(&spec(12, 1, 5), 0, 2), Err(Error::WrongRegime(_))));
    }

    #[test]
    fn common_neighbors_match_direct_small() {
        for s in connected_specs(5, 30).filter(|s| !twin_class_of(s).has_twins()) {
            let g = build(&s);
            for a in 0..s.n {
                for b in 0..s.n {
                    if a == b {
                        continue;
                    }
                    let closed = common_neighbors_closed(&s, a, b).unwrap().map(|r| r.neighbors).unwrap_or_default();
                    assert_eq!(closed, common_neighbors_direct(&g, a, b), "{s} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn double_special_scan() {
        let hits: Vec<_> = scan_double_special_conditions(12).iter().map(CirculantSpec::as_tuple).collect();
        assert_eq!(hits, vec![(10, 1, 3), (12, 1, 3), (12, 3, 5)]);
        assert!(scan_double_special_conditions(6).is_empty());
    }
}
