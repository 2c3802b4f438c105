//! Subdivided circulants `C_n(i÷p, j)` and `C_n(i, j÷p)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::circulant::{CirculantSpec, TwinClass, TwinClassification};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arc {
    I,
    J,
}

impl Arc {
    pub fn as_str(self) -> &'static str {
        match self {
            Arc::I => "i",
            Arc::J => "j",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcRegime {
    GenericArc,
    /// Arc `J` with `j = n/2`: two parallel paths between `u_a` and `u_{a+j}`.
    HalfSumArc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubdividedSpec {
    base: CirculantSpec,
    arc: Arc,
    p: usize,
}

impl SubdividedSpec {
    pub fn new(base: CirculantSpec, arc: Arc, p: usize) -> Result<Self> {
        base.require_connected()?;
        if p == 0 {
            return Err(Error::InvariantViolation(String::from("a subdivision needs p >= 1")));
        }
        Ok(SubdividedSpec { base, arc, p })
    }

    pub fn base(&self) -> &CirculantSpec {
        &self.base
    }

    pub fn arc(&self) -> Arc {
        self.arc
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn regime(&self) -> ArcRegime {
        if self.arc == Arc::J && self.base.is_half_j() {
            ArcRegime::HalfSumArc
        } else {
            ArcRegime::GenericArc
        }
    }

    /// The generator whose edges are subdivided.
    pub fn subdivided_generator(&self) -> usize {
        match self.arc {
            Arc::I => self.base.i(),
            Arc::J => self.base.j(),
        }
    }

    /// The generator whose edges stay plain `u`–`u` edges.
    pub fn plain_generator(&self) -> usize {
        match self.arc {
            Arc::I => self.base.j(),
            Arc::J => self.base.i(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n() * (1 + self.p)
    }

    pub fn index(&self, v: SubVertex) -> usize {
        v.index(self.n(), self.p)
    }

    pub fn vertex(&self, index: usize) -> Result<SubVertex> {
        SubVertex::from_index(index, self.n(), self.p)
            .ok_or(Error::VertexOutOfRange { vertex: index, vertex_count: self.vertex_count() })
    }

    /// Index of `u_a`, `a` taken mod `n`.
    pub fn u(&self, a: i64) -> usize {
        crate::zmod::reduce(a, self.n())
    }

    /// Index of `v_a^r`, `a` taken mod `n`, `1 <= r <= p`.
    pub fn v(&self, a: i64, r: usize) -> usize {
        debug_assert!((1..=self.p).contains(&r));
        self.n() + crate::zmod::reduce(a, self.n()) * self.p + (r - 1)
    }
}

impl fmt::Display for SubdividedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, i, j) = self.base.as_tuple();
        match self.arc {
            Arc::I => write!(f, "C_{n}({i}÷{}, {j})", self.p),
            Arc::J => write!(f, "C_{n}({i}, {j}÷{})", self.p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubVertex {
    U(usize),
    V(usize, usize),
}

impl SubVertex {
    pub fn index(self, n: usize, p: usize) -> usize {
        match self {
            SubVertex::U(a) => a,
            SubVertex::V(a, r) => n + a * p + (r - 1),
        }
    }

    pub fn from_index(index: usize, n: usize, p: usize) -> Option<Self> {
        if index < n {
            Some(SubVertex::U(index))
        } else if index < n * (1 + p) {
            let k = index - n;
            Some(SubVertex::V(k / p, k % p + 1))
        } else {
            None
        }
    }

    pub fn label(self) -> String {
        match self {
            SubVertex::U(a) => alloc::format!("u_{a}"),
            SubVertex::V(a, r) => alloc::format!("v_{a}_{r}"),
        }
    }
}

pub fn build_subdivided(spec: &SubdividedSpec) -> Graph {
    let (n, p) = (spec.n(), spec.p);
    let g = spec.subdivided_generator() as i64;
    let h = spec.plain_generator() as i64;
    let mut edges = Vec::with_capacity(n * (p + 2));
    for a in 0..n as i64 {
        let mut prev = spec.u(a);
        for r in 1..=p {
            let v = spec.v(a, r);
            edges.push((prev, v));
            prev = v;
        }
        edges.push((prev, spec.u(a + g)));
        edges.push((spec.u(a), spec.u(a + h)));
    }
    let labels = (0..spec.vertex_count())
        .map(|x| SubVertex::from_index(x, n, p).expect("index in range").label())
        .collect();
    Graph::from_edges(labels, edges).expect("subdivided edges are valid")
}

pub fn twin_classification_subdivided(spec: &SubdividedSpec) -> TwinClassification {
    let none = TwinClassification { variant: TwinClass::TwinFree, classes: Vec::new(), co_twin_pairs: Vec::new() };
    if spec.regime() == ArcRegime::GenericArc || spec.p >= 2 {
        return none;
    }
    let j = spec.base.j();
    let mut classes: Vec<Vec<usize>> = (0..j as i64).map(|a| alloc::vec![spec.v(a, 1), spec.v(a + j as i64, 1)]).collect();
    if spec.base.is(4, 1, 2) {
        classes.extend([alloc::vec![0, 2], alloc::vec![1, 3]]);
    }
    classes.sort();
    TwinClassification { variant: TwinClass::SubdividedPairs, classes, co_twin_pairs: Vec::new() }
}

/// Every subdivision of a connected base with `n` in range and `p <= p_max`.
/// Arc `J` is included for every base; arc `I` always.
pub fn subdivided_specs(n_min: usize, n_max: usize, p_max: usize) -> impl Iterator<Item = SubdividedSpec> {
    crate::circulant::connected_specs(n_min, n_max).flat_map(move |base| {
        [Arc::I, Arc::J]
            .into_iter()
            .flat_map(move |arc| (1..=p_max).map(move |p| SubdividedSpec { base, arc, p }))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::twin_partition;
    use alloc::vec;

    fn sub(n: usize, i: usize, j: usize, arc: Arc, p: usize) -> SubdividedSpec {
        SubdividedSpec::new(CirculantSpec::new(n, i, j).unwrap(), arc, p).unwrap()
    }

    #[test]
    fn index_roundtrip() {
        let s = sub(7, 1, 2, Arc::I, 3);
        for x in 0..s.vertex_count() {
            assert_eq!(s.index(s.vertex(x).unwrap()), x);
        }
        assert_eq!(s.vertex(28).ok(), None);
        assert_eq!(SubVertex::V(3, 2).label(), "v_3_2");
        assert_eq!(s.v(-1, 3), 7 + 6 * 3 + 2);
    }

    #[test]
    fn build_examples() {
        assert_eq!(build_subdivided(&sub(6, 1, 2, Arc::I, 2)).vertex_count(), 18);

        let s = sub(8, 1, 4, Arc::J, 1);
        let g = build_subdivided(&s);
        assert_eq!(g.vertex_count(), 16);
        for a in 0..8i64 {
            let mut want = vec![s.v(a, 1), s.v(a + 4, 1), s.u(a + 1), s.u(a - 1)];
            want.sort_unstable();
            assert_eq!(g.adj(s.u(a)), want.as_slice());
        }

        let s = sub(7, 1, 3, Arc::I, 1);
        let g = build_subdivided(&s);
        for a in 0..7i64 {
            let mut want = vec![s.u(a), s.u(a + 1)];
            want.sort_unstable();
            assert_eq!(g.adj(s.v(a, 1)), want.as_slice());
        }
    }

    #[test]
    fn degrees_and_edge_counts() {
        for s in subdivided_specs(4, 20, 4) {
            let g = build_subdivided(&s);
            let n = s.n();
            let plain_half = s.regime() == ArcRegime::GenericArc && 2 * s.plain_generator() == n;
            let u_deg = if plain_half { 3 } else { 4 };
            for a in 0..n {
                assert_eq!(g.degree(a), u_deg, "{s}");
            }
            for x in n..g.vertex_count() {
                assert_eq!(g.degree(x), 2, "{s}");
            }
            let plain = if plain_half { n / 2 } else { n };
            assert_eq!(g.edge_count(), n * (s.p() + 1) + plain, "{s}");
        }
    }

    #[test]
    fn twin_examples() {
        let s = sub(8, 1, 4, Arc::J, 1);
        assert_eq!(
            twin_classification_subdivided(&s).classes,
            vec![vec![8, 12], vec![9, 13], vec![10, 14], vec![11, 15]]
        );
        let s = sub(4, 1, 2, Arc::J, 1);
        assert_eq!(
            twin_classification_subdivided(&s).classes,
            vec![vec![0, 2], vec![1, 3], vec![4, 6], vec![5, 7]]
        );
        let s = sub(10, 3, 5, Arc::J, 2);
        assert_eq!(twin_classification_subdivided(&s).variant, TwinClass::TwinFree);
    }

    #[test]
    fn twin_classification_matches_graph() {
        for s in subdivided_specs(4, 30, 4) {
            let direct: Vec<Vec<usize>> =
                twin_partition(&build_subdivided(&s)).nontrivial_classes().map(<[usize]>::to_vec).collect();
            assert_eq!(twin_classification_subdivided(&s).classes, direct, "{s}");
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let disconnected = CirculantSpec::new(10, 2, 4).unwrap();
        assert!(SubdividedSpec::new(disconnected, Arc::I, 1).is_err());
        let base = CirculantSpec::new(7, 1, 2).unwrap();
        assert!(SubdividedSpec::new(base, Arc::I, 0).is_err());
    }
}
