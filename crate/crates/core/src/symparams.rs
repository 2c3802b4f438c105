//! Determining number, distinguishing number and cost of 2-distinguishing:
//! closed forms with explicit witnesses, the exhaustive searches, and the
//! cross-checks between them.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::brute::{brute_automorphisms, Budget};
use crate::circulant::{is_edge_transitive, twin_class_of, CirculantSpec, TwinClass};
use crate::error::{Error, Result};
use crate::group::{closed_form_group, CheckStatus, GroupElement};
use crate::search::{IndexedGroup, SearchBudget};
use crate::spec::GraphSpec;
use crate::subdivided::{Arc, ArcRegime, SubdividedSpec};
use crate::zmod::{neg_mod, preserving_affines, representative_sets, symbol_stabilizer, unit_with_nonunit_shift, RepSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Search,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Search => "search",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub det: usize,
    pub dist: usize,
    /// Absent unless `dist = 2`.
    pub cost: Option<usize>,
    pub det_witness: Vec<usize>,
    /// Colour of each vertex.
    pub dist_witness: Vec<usize>,
    pub cost_witness: Option<Vec<usize>>,
    pub method: Method,
}

impl SymmetryReport {
    pub fn values(&self) -> (usize, usize, Option<usize>) {
        (self.det, self.dist, self.cost)
    }

    /// Checks every witness against `group`.
    pub fn validate(&self, group: &IndexedGroup) -> core::result::Result<(), String> {
        if self.det_witness.len() != self.det || !group.is_determining(&self.det_witness) {
            return Err(alloc::format!("determining witness {:?} fails", self.det_witness));
        }
        let colors: BTreeSet<usize> = self.dist_witness.iter().copied().collect();
        if colors.len() > self.dist || !group.is_distinguishing_coloring(&self.dist_witness) {
            return Err(alloc::format!("distinguishing witness {:?} fails", self.dist_witness));
        }
        match (&self.cost, &self.cost_witness) {
            (None, None) if self.dist != 2 => Ok(()),
            (Some(c), Some(r)) if self.dist == 2 && r.len() == *c && group.is_distinguishing_class(r) => Ok(()),
            _ => Err(alloc::format!("cost witness {:?} fails", self.cost_witness)),
        }
    }
}

impl fmt::Display for SymmetryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "det {} dist {} cost ", self.det, self.dist)?;
        match self.cost {
            Some(c) => write!(f, "{c}"),
            None => f.write_str("-"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientDistInput {
    pub k: usize,
    pub d_tilde: usize,
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, m| acc * (n - m) as u128 / (m + 1) as u128)
}

/// Smallest `d` with `C(d, k) >= d_tilde`.
pub fn dist_from_quotient(q: QuotientDistInput) -> usize {
    let (k, dt) = (q.k.max(1), q.d_tilde.max(1) as u128);
    (k..).find(|&d| binomial(d, k) >= dt).expect("C(d, k) grows without bound")
}

/// All `k`-subsets of `0..d`, lexicographic.
fn k_subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..d {
            cur.push(x);
            go(x + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, k, &mut Vec::new(), &mut out);
    out
}

/// Lifts a distinguishing colouring of the twin quotient: the class with
/// quotient colour `c` receives the `c`-th `k`-subset of `0..d`, spread over
/// its members in increasing order.
pub fn lift_quotient_coloring(classes: &[Vec<usize>], quotient_colors: &[usize], d: usize) -> Vec<usize> {
    let k = classes[0].len();
    let subsets = k_subsets(d, k);
    let nv = classes.iter().map(Vec::len).sum();
    let mut colors = alloc::vec![0; nv];
    for (class, &c) in classes.iter().zip(quotient_colors) {
        for (&v, &col) in class.iter().zip(&subsets[c]) {
            colors[v] = col;
        }
    }
    colors
}

pub fn determining_number(group: &IndexedGroup, budget: &SearchBudget) -> Result<(usize, Vec<usize>)> {
    let w = group.min_determining_set(budget)?;
    Ok((w.len(), w))
}

pub fn distinguishing_number(group: &IndexedGroup, budget: &SearchBudget) -> Result<(usize, Vec<usize>)> {
    group.distinguishing_number(budget)
}

/// `None` when the distinguishing number is not 2.
pub fn cost_2dist(group: &IndexedGroup, budget: &SearchBudget) -> Result<Option<(usize, Vec<usize>)>> {
    if group.nontrivial_count() == 0 {
        return Ok(None);
    }
    Ok(group.min_distinguishing_class(group.vertex_count() / 2, budget)?.map(|r| (r.len(), r)))
}

/// All three parameters by exhaustive search over `group`.
pub fn search_params(group: &IndexedGroup, budget: &SearchBudget) -> Result<SymmetryReport> {
    let (det, det_witness) = determining_number(group, budget)?;
    let (dist, dist_witness) = distinguishing_number(group, budget)?;
    let cost = if dist == 2 { cost_2dist(group, budget)? } else { None };
    Ok(SymmetryReport {
        det,
        dist,
        cost: cost.as_ref().map(|c| c.0),
        det_witness,
        dist_witness,
        cost_witness: cost.map(|c| c.1),
        method: Method::Search,
    })
}

fn two_coloring(nv: usize, class: &[usize]) -> Vec<usize> {
    let zero_in = class.contains(&0);
    (0..nv).map(|v| usize::from(class.contains(&v) != zero_in)).collect()
}

fn report(det_witness: Vec<usize>, dist: usize, dist_witness: Vec<usize>, cost_witness: Option<Vec<usize>>) -> SymmetryReport {
    SymmetryReport {
        det: det_witness.len(),
        dist,
        cost: cost_witness.as_ref().map(Vec::len),
        det_witness,
        dist_witness,
        cost_witness,
        method: Method::ClosedForm,
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// The 3-set used as a colour class of a 2-distinguishing colouring of a
/// twin-free base graph. The usual choice is `{0,i,j}`, `{0,-i,j}` or
/// `{-j,0,i}`; when the affine group still moves that set onto itself the
/// lex-least 3-set through 0 with trivial setwise stabiliser is used.
pub fn witness_2dist_class(spec: &CirculantSpec) -> Result<Vec<usize>> {
    spec.require_connected()?;
    if twin_class_of(spec) != TwinClass::TwinFree {
        return Err(Error::WrongRegime("the 3-set witness needs a twin-free graph other than C_10(1,3)"));
    }
    let (n, i, j) = spec.as_tuple();
    let set = if 2 * i % n == j {
        [neg_mod(j, n), 0, i]
    } else if is_edge_transitive(spec) && j * j % n == 1 {
        [0, neg_mod(i, n), j]
    } else {
        [0, i, j]
    };
    let h = symbol_stabilizer(n, i, j)?.h;
    if affine_rigid(n, &h, &set) {
        return Ok(set.to_vec());
    }
    (1..n)
        .flat_map(|a| (a + 1..n).map(move |b| [0, a, b]))
        .find(|s| affine_rigid(n, &h, s))
        .map(|s| s.to_vec())
        .ok_or_else(|| Error::InvariantViolation(alloc::format!("{spec}: no rigid 3-set")))
}

/// No `x -> s + t x` with `t` in `h`, other than the identity, maps `set` onto itself.
fn affine_rigid(n: usize, h: &[usize], set: &[usize]) -> bool {
    let member = |x: usize| set.contains(&x);
    h.iter().all(|&t| {
        (0..n).all(|s| (s == 0 && t == 1) || !set.iter().all(|&x| member((s + t * x) % n)))
    })
}

/// Distinguishing colouring of `C_n(i,j)` with `i + j = n/2` lifted from
/// the quotient cycle.
fn half_sum_coloring(spec: &CirculantSpec) -> Vec<usize> {
    let (n, i, _) = spec.as_tuple();
    let m = n / 2;
    let mut qcolors = alloc::vec![0; m];
    if m >= 6 {
        for pos in [0, 1, 3] {
            qcolors[pos * i % m] = 1;
        }
    } else {
        qcolors[0] = 1;
        qcolors[i % m] = 2;
    }
    let d_tilde = if m >= 6 { 2 } else { 3 };
    let d = dist_from_quotient(QuotientDistInput { k: 2, d_tilde });
    let classes: Vec<Vec<usize>> = (0..m).map(|a| alloc::vec![a, a + m]).collect();
    lift_quotient_coloring(&classes, &qcolors, d)
}

/// A distinguishing 3-colouring of `C_10(1,3)` found by the colouring search.
const COTWIN_1013_COLORING: [usize; 10] = [0, 0, 0, 0, 1, 0, 1, 1, 2, 1];

fn base_params(spec: &CirculantSpec) -> Result<SymmetryReport> {
    spec.require_connected()?;
    let n = spec.n();
    let range = |k: usize| (0..k).collect::<Vec<_>>();
    Ok(match twin_class_of(spec) {
        TwinClass::CompleteGraph => report(range(n - 1), n, range(n), None),
        TwinClass::Six13 | TwinClass::Eight13 => {
            let k = n / 2;
            let classes: Vec<Vec<usize>> = (0..2).map(|r| (r..n).step_by(2).collect()).collect();
            let d = dist_from_quotient(QuotientDistInput { k, d_tilde: 2 });
            report(range(n - 2), d, lift_quotient_coloring(&classes, &[0, 1], d), None)
        }
        TwinClass::CoTwin1013 => report(alloc::vec![0, 2, 4, 6], 3, COTWIN_1013_COLORING.to_vec(), None),
        TwinClass::HalfSum => report(range(n / 2), 3, half_sum_coloring(spec), None),
        TwinClass::TwinFree => {
            let class = sorted(witness_2dist_class(spec)?);
            report(alloc::vec![0, 1], 2, two_coloring(n, &class), Some(class))
        }
        TwinClass::SubdividedPairs => unreachable!(),
    })
}

/// Whether the `H'`-row of the subdivision table applies (`H' = {±1}`).
fn h_prime_trivial(base: &CirculantSpec) -> Result<bool> {
    Ok(symbol_stabilizer(base.n(), base.i(), base.j())?.h_prime_is_trivial())
}

fn generic_arc_params(sub: &SubdividedSpec) -> Result<SymmetryReport> {
    let nv = sub.vertex_count();
    let trivial = h_prime_trivial(sub.base())?;
    let set = if trivial && sub.p() >= 2 {
        alloc::vec![sub.v(0, 1)]
    } else if trivial {
        alloc::vec![sub.u(0), sub.v(0, 1)]
    } else {
        let g = sub.subdivided_generator();
        let a = unit_with_nonunit_shift(sub.n(), g).ok_or_else(|| {
            Error::InvariantViolation(alloc::format!("{sub}: no unit a with a + {g} a nonunit"))
        })?;
        alloc::vec![sub.u(0), sub.v(a as i64, 1)]
    };
    let set = sorted(set);
    Ok(report(set.clone(), 2, two_coloring(nv, &set), Some(set)))
}

/// Colour class of size `j` for the rows where the cost equals `j`.
fn half_sum_arc_cost_j(sub: &SubdividedSpec) -> Vec<usize> {
    let (j, p) = (sub.base().j() as i64, sub.p());
    let v = |a: i64, r: usize| sub.v(a, r);
    if p == 2 {
        let mut s = alloc::vec![v(0, 1), v(1, 1), v(j + 2, 1)];
        s.extend((3..j).map(|a| v(a, 1)));
        s
    } else if j == 2 {
        alloc::vec![v(0, 2), v(1, p)]
    } else if j == 3 {
        alloc::vec![v(0, 1), v(1, 2), v(2, 2)]
    } else {
        let mut s = alloc::vec![v(0, 2)];
        s.extend((1..j - 1).map(|a| v(a, 1)));
        s.push(v(j - 1, p));
        s
    }
}

fn half_sum_arc_params(sub: &SubdividedSpec) -> Result<SymmetryReport> {
    let (j, p, nv) = (sub.base().j(), sub.p(), sub.vertex_count());
    let first_row: Vec<usize> = (0..j as i64).map(|a| sub.v(a, 1)).collect();
    if p == 1 && j == 2 {
        // twin quotient is P_4 with classes {u0,u2} {u1,u3} {v0,v2} {v1,v3}
        let classes = [alloc::vec![0, 2], alloc::vec![1, 3], alloc::vec![4, 6], alloc::vec![5, 7]];
        let d = dist_from_quotient(QuotientDistInput { k: 2, d_tilde: 2 });
        let colors = lift_quotient_coloring(&classes, &[0, 0, 1, 0], d);
        return Ok(report(alloc::vec![0, 1, 4, 5], d, colors, None));
    }
    if p == 1 {
        let det = sorted(core::iter::once(sub.u(0)).chain(first_row.iter().copied()).collect());
        let (i, jj) = (sub.base().i() as i64, j as i64);
        let cost = sorted([sub.u(0), sub.u(i), sub.u(jj)].into_iter().chain(first_row).collect());
        return Ok(report(det, 2, two_coloring(nv, &cost), Some(cost)));
    }
    let cost = if (p == 2 && (2..=5).contains(&j)) || (p == 3 && (j == 2 || j == 3)) {
        sorted(core::iter::once(sub.u(0)).chain(first_row.iter().copied()).collect())
    } else {
        sorted(half_sum_arc_cost_j(sub))
    };
    Ok(report(first_row, 2, two_coloring(nv, &cost), Some(cost)))
}

/// The parameters and witnesses from the closed forms.
pub fn closed_form_params(spec: &GraphSpec) -> Result<SymmetryReport> {
    match spec {
        GraphSpec::Base(b) => base_params(b),
        GraphSpec::Subdivided(sub) => match sub.regime() {
            ArcRegime::GenericArc => generic_arc_params(sub),
            ArcRegime::HalfSumArc => half_sum_arc_params(sub),
        },
    }
}

/// The row of the summary table a spec falls in: family and condition text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Table1Row {
    pub index: usize,
    pub family: &'static str,
    pub condition: &'static str,
}

pub const TABLE1_ROWS: [(&str, &str); 12] = [
    ("C_n(i,j)", "n ∈ {4, 5}"),
    ("C_n(i,j)", "(n,i,j) = (6, 1, 3)"),
    ("C_n(i,j)", "(n, i, j) = (8,1,3)"),
    ("C_n(i,j)", "(n,i,j) = (10, 1, 3)"),
    ("C_n(i,j)", "i+j = n/2, but n ≠ 8"),
    ("C_n(i,j)", "otherwise"),
    ("C_n(i_÷ℓ, j), or C_n(i, j_÷ℓ), j<n/2", "ℓ ≥ 2 and H = {±1}"),
    ("C_n(i_÷ℓ, j), or C_n(i, j_÷ℓ), j<n/2", "otherwise"),
    ("C_n(i, j_÷ℓ), j=n/2", "ℓ=1, j=2"),
    ("C_n(i, j_÷ℓ), j=n/2", "ℓ=1, j ≥ 3"),
    ("C_n(i, j_÷ℓ), j=n/2", "ℓ=2, j ∈ {2, 3, 4, 5} or ℓ=j=3"),
    ("C_n(i, j_÷ℓ), j=n/2", "otherwise"),
];

pub fn table1_row(spec: &GraphSpec) -> Result<Table1Row> {
    let index = match spec {
        GraphSpec::Base(b) => {
            b.require_connected()?;
            match twin_class_of(b) {
                TwinClass::CompleteGraph => 0,
                TwinClass::Six13 => 1,
                TwinClass::Eight13 => 2,
                TwinClass::CoTwin1013 => 3,
                TwinClass::HalfSum => 4,
                _ => 5,
            }
        }
        GraphSpec::Subdivided(sub) => match sub.regime() {
            ArcRegime::GenericArc => {
                if sub.p() >= 2 && h_prime_trivial(sub.base())? {
                    6
                } else {
                    7
                }
            }
            ArcRegime::HalfSumArc => {
                let (j, p) = (sub.base().j(), sub.p());
                match (p, j) {
                    (1, 2) => 8,
                    (1, _) => 9,
                    (2, 2..=5) | (3, 2..=3) => 10,
                    _ => 11,
                }
            }
        },
    };
    let (family, condition) = TABLE1_ROWS[index];
    Ok(Table1Row { index, family, condition })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecVerification {
    pub spec: GraphSpec,
    pub closed: SymmetryReport,
    pub search: Option<SymmetryReport>,
    pub aut_order: Option<u64>,
    pub status: CheckStatus,
}

/// Compares the closed-form parameters with a search over the brute-force
/// automorphism group, and validates the closed-form witnesses against it.
pub fn verify_spec(spec: &GraphSpec, brute: &Budget, search: &SearchBudget) -> Result<SpecVerification> {
    let closed = closed_form_params(spec)?;
    let mut out = SpecVerification { spec: *spec, closed, search: None, aut_order: None, status: CheckStatus::Pass };
    let graph = spec.build();
    let raw = match brute_automorphisms(&graph, brute) {
        Ok(raw) => raw,
        Err(e @ Error::BudgetExceeded { .. }) => {
            out.status = CheckStatus::Skipped(alloc::format!("{e}"));
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    out.aut_order = Some(raw.order());
    let group = IndexedGroup::new(graph.vertex_count(), &raw.perms)?;
    let found = match search_params(&group, search) {
        Ok(r) => r,
        Err(e @ Error::BudgetExceeded { .. }) => {
            out.status = CheckStatus::Skipped(alloc::format!("{e}"));
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    if found.values() != out.closed.values() {
        out.status = CheckStatus::Mismatch(alloc::format!(
            "closed form ({}) but search ({}); search certificates: det {:?}, colouring {:?}, class {:?}",
            out.closed,
            found,
            found.det_witness,
            found.dist_witness,
            found.cost_witness
        ));
    } else if let Err(why) = out.closed.validate(&group) {
        out.status = CheckStatus::Mismatch(why);
    }
    out.search = Some(found);
    Ok(out)
}

/// One row of the reflection table: `x -> s - x (mod 2j)` preserves `set`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table3Row {
    pub j: usize,
    pub s: usize,
    pub set: RepSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AppendixCheck {
    /// Compare the shipped reflection table with a regenerated one.
    Table3(Vec<Table3Row>),
    /// `p = 2`, `j ∈ {2,3,4,5}`: every size-`j` class with one vertex per
    /// path pair is preserved by a nontrivial automorphism, built by
    /// conjugating a reflection with β-flips.
    C1,
    /// The representative set `{0, 1, j+2, 3, ..., j-1}` has only the
    /// identity as preserver.
    C2(usize),
    /// `j = p = 3`: every size-3 class with representative subscripts has a
    /// nontrivial preserver.
    C3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppendixReport {
    pub check: String,
    pub passed: bool,
    pub details: Vec<String>,
}

pub fn verify_appendix(check: &AppendixCheck) -> Result<AppendixReport> {
    match check {
        AppendixCheck::Table3(rows) => verify_table3(rows),
        AppendixCheck::C1 => verify_c1(),
        AppendixCheck::C2(j) => verify_c2(*j),
        AppendixCheck::C3 => verify_c3(),
    }
}

/// The reflections `(s, -1)` preserving each representative set, for one `j`.
pub fn reflection_table(j: usize) -> Result<Vec<(RepSet, Vec<usize>)>> {
    representative_sets(j)?
        .into_iter()
        .map(|set| {
            let refl = preserving_affines(j, &set)?
                .into_iter()
                .filter(|&(_, t)| t == 2 * j - 1)
                .map(|(s, _)| s)
                .collect();
            Ok((set, refl))
        })
        .collect()
}

fn verify_table3(rows: &[Table3Row]) -> Result<AppendixReport> {
    let mut details = Vec::new();
    let mut passed = true;
    for row in rows {
        if !row.set.is_preserved_by(row.s, 2 * row.j - 1) {
            passed = false;
            details.push(alloc::format!("j={} ({}, -1) does not preserve {:?}", row.j, row.s, row.set.members()));
        }
    }
    for j in 2..=5 {
        for (set, refl) in reflection_table(j)? {
            let listed = rows.iter().any(|r| r.j == j && r.set == set);
            if !listed {
                passed = false;
                details.push(alloc::format!("j={j}: {:?} missing (preserved by s in {refl:?})", set.members()));
            }
            if refl.is_empty() {
                passed = false;
                details.push(alloc::format!("j={j}: {:?} has no reflection preserver", set.members()));
            }
        }
    }
    details.push(alloc::format!("{} rows checked", rows.len()));
    Ok(AppendixReport { check: String::from("table3"), passed, details })
}

fn verify_c2(j: usize) -> Result<AppendixReport> {
    if j < 6 {
        return Err(Error::WrongRegime("the single-preserver set is stated for j >= 6"));
    }
    let mut members: Vec<usize> = (0..j).collect();
    members[2] = j + 2;
    let set = RepSet::new(j, members)?;
    let pres = preserving_affines(j, &set)?;
    Ok(AppendixReport {
        check: alloc::format!("c2({j})"),
        passed: pres == [(0, 1)],
        details: alloc::vec![alloc::format!("{:?} preserved by {pres:?}", set.members())],
    })
}

/// Classes `{v_{a_k}^{r_k}}` with `a` ranging over representative sets and
/// every `r_k` in `supers`.
fn rep_classes(sub: &SubdividedSpec, supers: &[usize]) -> Result<Vec<Vec<usize>>> {
    let j = sub.base().j();
    let mut out = Vec::new();
    for set in representative_sets(j)? {
        let combos = supers.len().pow(j as u32);
        for mut code in 0..combos {
            let mut class = Vec::with_capacity(j);
            for &a in set.members() {
                class.push(sub.v(a as i64, supers[code % supers.len()]));
                code /= supers.len();
            }
            out.push(sorted(class));
        }
    }
    Ok(out)
}

fn check_all_preserved(sub: &SubdividedSpec, classes: &[Vec<usize>]) -> Result<(usize, Option<Vec<usize>>)> {
    let spec = GraphSpec::Subdivided(*sub);
    let group = IndexedGroup::new(sub.vertex_count(), &closed_form_group(&spec)?.perms()?)?;
    let bad = classes.iter().find(|c| group.is_distinguishing_class(c)).cloned();
    Ok((classes.len(), bad))
}

fn verify_c1() -> Result<AppendixReport> {
    let mut details = Vec::new();
    let mut passed = true;
    for j in 2..=5usize {
        let base = (1..j).find(|&i| crate::zmod::gcd(i, j) == 1).expect("j >= 2");
        let sub = SubdividedSpec::new(CirculantSpec::new(2 * j, base, j)?, Arc::J, 2)?;
        let spec = GraphSpec::Subdivided(sub);
        let mut lifted = 0usize;
        for class in rep_classes(&sub, &[1, 2])? {
            // conjugate a reflection preserving the all-superscript-1 image
            let flips: u64 = class
                .iter()
                .filter_map(|&x| match sub.vertex(x).ok()? {
                    crate::subdivided::SubVertex::V(a, 2) => Some(1u64 << (a % j)),
                    _ => None,
                })
                .fold(0, |m, b| m | b);
            let beta = GroupElement::BetaAffine { flips: crate::group::Bits::new(j, flips), s: 0, t: 1 };
            let image: Vec<usize> = class.iter().map(|&x| beta.act(x, &spec)).collect::<Result<_>>()?;
            let subs: Vec<usize> = image
                .iter()
                .map(|&x| match sub.vertex(x) {
                    Ok(crate::subdivided::SubVertex::V(a, _)) => a,
                    _ => usize::MAX,
                })
                .collect();
            let set = RepSet::from_residues(j, &subs)?;
            let found = preserving_affines(j, &set)?.into_iter().filter(|&(s, t)| (s, t) != (0, 1)).find_map(|(s, t)| {
                let refl = GroupElement::BetaAffine { flips: crate::group::Bits::zero(j), s, t };
                let conj = beta.compose(&refl, &spec).ok()?.compose(&beta, &spec).ok()?;
                let perm = conj.to_perm(&spec).ok()?;
                let mut img: Vec<usize> = class.iter().map(|&x| perm.apply(x)).collect();
                img.sort_unstable();
                (img == class && !perm.is_identity()).then_some(())
            });
            if found.is_some() {
                lifted += 1;
            } else {
                passed = false;
                details.push(alloc::format!("{sub}: class {class:?} has no lifted preserver"));
            }
        }
        details.push(alloc::format!("{sub}: {lifted} classes preserved"));
    }
    Ok(AppendixReport { check: String::from("c1"), passed, details })
}

fn verify_c3() -> Result<AppendixReport> {
    let mut details = Vec::new();
    let mut passed = true;
    for i in [1, 2] {
        let sub = SubdividedSpec::new(CirculantSpec::new(6, i, 3)?, Arc::J, 3)?;
        let (count, bad) = check_all_preserved(&sub, &rep_classes(&sub, &[1, 2, 3])?)?;
        match bad {
            None => details.push(alloc::format!("{sub}: all {count} classes have a nontrivial preserver")),
            Some(c) => {
                passed = false;
                details.push(alloc::format!("{sub}: class {c:?} has only the identity as preserver"));
            }
        }
    }
    Ok(AppendixReport { check: String::from("c3"), passed, details })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn base(n: usize, i: usize, j: usize) -> GraphSpec {
        GraphSpec::Base(CirculantSpec::new(n, i, j).unwrap())
    }

    fn sub(n: usize, i: usize, j: usize, arc: Arc, p: usize) -> GraphSpec {
        GraphSpec::Subdivided(SubdividedSpec::new(CirculantSpec::new(n, i, j).unwrap(), arc, p).unwrap())
    }

    fn search(spec: &GraphSpec) -> SymmetryReport {
        let raw = brute_automorphisms(&spec.build(), &Budget::default()).unwrap();
        let g = IndexedGroup::new(spec.vertex_count(), &raw.perms).unwrap();
        search_params(&g, &SearchBudget::default()).unwrap()
    }

    #[test]
    fn quotient_formula() {
        assert_eq!(dist_from_quotient(QuotientDistInput { k: 3, d_tilde: 2 }), 4);
        assert_eq!(dist_from_quotient(QuotientDistInput { k: 4, d_tilde: 2 }), 5);
        assert_eq!(dist_from_quotient(QuotientDistInput { k: 1, d_tilde: 7 }), 7);
        for k in 1..6 {
            let mut prev = 0;
            for dt in 1..40 {
                let d = dist_from_quotient(QuotientDistInput { k, d_tilde: dt });
                assert!(d >= prev);
                prev = d;
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_params(&base(8, 1, 3)).unwrap().values(), (6, 5, None));
        assert_eq!(closed_form_params(&base(12, 1, 5)).unwrap().values(), (6, 3, None));
        assert_eq!(closed_form_params(&sub(14, 3, 7, Arc::J, 2)).unwrap().values(), (7, 2, Some(7)));
        assert_eq!(closed_form_params(&base(7, 1, 2)).unwrap().det_witness, vec![0, 1]);
    }

    #[test]
    fn witness_class_examples() {
        let w = |n, i, j| witness_2dist_class(&CirculantSpec::new(n, i, j).unwrap()).unwrap();
        assert_eq!(w(7, 1, 2), vec![5, 0, 1]);
        assert_eq!(w(13, 1, 5), vec![0, 1, 5]);
        assert_eq!(w(15, 1, 4), vec![0, 1, 3]);
        assert_eq!(w(17, 1, 4), vec![0, 1, 4]);
        assert!(witness_2dist_class(&CirculantSpec::new(10, 1, 3).unwrap()).is_err());
    }

    #[test]
    fn search_examples() {
        assert_eq!(search(&base(7, 1, 2)).values(), (2, 2, Some(3)));
        assert_eq!(search(&base(7, 1, 2)).det_witness, vec![0, 1]);
        assert_eq!(search(&base(6, 1, 3)).values(), (4, 4, None));
        assert_eq!(search(&base(5, 1, 2)).values(), (4, 5, None));
        assert_eq!(search(&sub(4, 1, 2, Arc::J, 1)).values(), (4, 3, None));
        assert_eq!(search(&sub(10, 1, 5, Arc::J, 1)).cost, Some(8));
    }

    #[test]
    fn cotwin_coloring_is_search_result() {
        let s = search(&base(10, 1, 3));
        assert_eq!(s.dist_witness, COTWIN_1013_COLORING.to_vec());
    }

    #[test]
    fn verify_examples() {
        let b = Budget::default();
        let sb = SearchBudget::default();
        for (spec, want) in [
            (base(10, 1, 4), (5, 3, None)),
            (sub(6, 1, 3, Arc::J, 3), (3, 2, Some(4))),
            (sub(4, 1, 2, Arc::J, 1), (4, 3, None)),
        ] {
            let r = verify_spec(&spec, &b, &sb).unwrap();
            assert_eq!(r.status, CheckStatus::Pass, "{spec}");
            assert_eq!(r.closed.values(), want);
        }
    }

    #[test]
    fn closed_form_witnesses_validate_without_brute() {
        let specs = crate::circulant::connected_specs(4, 30)
            .map(GraphSpec::Base)
            .chain(crate::subdivided::subdivided_specs(4, 16, 4).map(GraphSpec::Subdivided));
        for spec in specs {
            if spec.vertex_count() > crate::search::MAX_SEARCH_VERTICES {
                continue;
            }
            let group = closed_form_group(&spec).unwrap();
            let g = IndexedGroup::new(spec.vertex_count(), &group.perms().unwrap()).unwrap();
            let r = closed_form_params(&spec).unwrap();
            assert_eq!(r.validate(&g), Ok(()), "{spec}");
        }
    }

    #[test]
    fn twin_free_lower_bounds() {
        for s in crate::circulant::connected_specs(5, 30).filter(|s| twin_class_of(s) == TwinClass::TwinFree) {
            let n = s.n();
            for a in 0..n {
                let fix = GroupElement::affine(2 * a % n, n - 1);
                assert_eq!(fix.act(a, &GraphSpec::Base(s)).unwrap(), a);
            }
            let spec = GraphSpec::Base(s);
            let g = IndexedGroup::new(n, &closed_form_group(&spec).unwrap().perms().unwrap()).unwrap();
            for a in 0..n {
                for b in a + 1..n {
                    assert!(!g.is_distinguishing_class(&[a, b]), "{s} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn appendix_checks() {
        assert!(verify_appendix(&AppendixCheck::C2(8)).unwrap().passed);
        assert!(verify_appendix(&AppendixCheck::C2(3)).is_err());
        assert!(verify_appendix(&AppendixCheck::C1).unwrap().passed);
        assert!(verify_appendix(&AppendixCheck::C3).unwrap().passed);
        let table = reflection_table(4).unwrap();
        let row = table.iter().find(|(s, _)| s.members() == [0, 1, 6, 3]).unwrap();
        assert!(row.1.contains(&1));
    }

    #[test]
    fn table1_buckets() {
        assert_eq!(table1_row(&base(12, 1, 5)).unwrap().condition, "i+j = n/2, but n ≠ 8");
        assert_eq!(table1_row(&sub(6, 1, 3, Arc::J, 3)).unwrap().index, 10);
        assert_eq!(table1_row(&sub(7, 1, 2, Arc::I, 2)).unwrap().index, 6);
    }
}
