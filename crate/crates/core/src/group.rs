//! Closed-form automorphism groups and their vertex actions.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::brute::{brute_automorphisms, Budget};
use crate::circulant::{twin_class_of, CirculantSpec, TwinClass};
use crate::error::{Error, Result};
use crate::spec::GraphSpec;
use crate::subdivided::{ArcRegime, SubVertex, SubdividedSpec};
use crate::zmod::{neg_mod, symbol_stabilizer};

/// A vertex permutation: `self.0[v]` is the image of `v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = alloc::vec![0; self.0.len()];
        for (v, &x) in self.0.iter().enumerate() {
            inv[x] = v;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(v, &x)| v == x)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("perm([")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("])")
    }
}

/// A fixed-length bit vector of at most 64 bits; bit `k` is flag `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bits {
    pub len: usize,
    pub mask: u64,
}

impl Bits {
    pub fn new(len: usize, mask: u64) -> Self {
        debug_assert!(len <= 64);
        Bits { len, mask }
    }

    pub fn zero(len: usize) -> Self {
        Bits::new(len, 0)
    }

    pub fn single(len: usize, k: usize) -> Self {
        Bits::new(len, 1 << k)
    }

    pub fn get(&self, k: usize) -> bool {
        self.mask >> k & 1 == 1
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len {
            f.write_str(if self.get(k) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    /// `a -> s + t a`, extended to subdivision vertices.
    Affine { s: usize, t: usize },
    /// Affine map followed by twin swaps `a <-> a + n/2` on the flagged
    /// classes `a mod n/2`.
    FlipAffine { flips: Bits, s: usize, t: usize },
    /// Affine extension followed by the path reversals `β_c`, `c mod j`
    /// flagged.
    BetaAffine { flips: Bits, s: usize, t: usize },
    Perm(Perm),
}

impl GroupElement {
    pub fn affine(s: usize, t: usize) -> Self {
        GroupElement::Affine { s, t }
    }

    /// The image of `v` in the graph described by `ctx`.
    pub fn act(&self, v: usize, ctx: &GraphSpec) -> Result<usize> {
        let count = ctx.vertex_count();
        if v >= count {
            return Err(Error::VertexOutOfRange { vertex: v, vertex_count: count });
        }
        match (self, ctx) {
            (GroupElement::Perm(p), _) => {
                if p.len() != count {
                    return Err(Error::ContextMismatch("permutation length differs from the vertex count"));
                }
                Ok(p.apply(v))
            }
            (GroupElement::Affine { s, t }, GraphSpec::Base(b)) => Ok((s + t * v) % b.n()),
            (GroupElement::Affine { s, t }, GraphSpec::Subdivided(sub)) => affine_on_subdivided(*s, *t, v, sub),
            (GroupElement::FlipAffine { flips, s, t }, GraphSpec::Base(b)) => {
                let n = b.n();
                if n % 2 != 0 || flips.len != n / 2 {
                    return Err(Error::ContextMismatch("flip-affine maps need n even and n/2 flip bits"));
                }
                let y = (s + t * v) % n;
                Ok(if flips.get(y % (n / 2)) { (y + n / 2) % n } else { y })
            }
            (GroupElement::BetaAffine { flips, s, t }, GraphSpec::Subdivided(sub)) => {
                if sub.regime() != ArcRegime::HalfSumArc || flips.len != sub.base().j() {
                    return Err(Error::ContextMismatch("beta-affine maps act on C_2j(i, j÷p) only"));
                }
                let y = affine_on_subdivided(*s, *t, v, sub)?;
                Ok(beta(flips, y, sub))
            }
            (GroupElement::FlipAffine { .. }, _) => Err(Error::ContextMismatch("flip-affine maps act on base graphs only")),
            (GroupElement::BetaAffine { .. }, _) => Err(Error::ContextMismatch("beta-affine maps act on subdivisions only")),
        }
    }

    pub fn to_perm(&self, ctx: &GraphSpec) -> Result<Perm> {
        if let GroupElement::Perm(p) = self {
            self.act(0, ctx)?;
            return Ok(p.clone());
        }
        (0..ctx.vertex_count()).map(|v| self.act(v, ctx)).collect::<Result<Vec<_>>>().map(Perm)
    }

    /// `self ∘ other`. Two affine maps compose to an affine map; anything
    /// else is composed through the induced permutations.
    pub fn compose(&self, other: &GroupElement, ctx: &GraphSpec) -> Result<GroupElement> {
        if let (GroupElement::Affine { s: s1, t: t1 }, GroupElement::Affine { s: s2, t: t2 }) = (self, other) {
            let n = ctx.base().n();
            return Ok(GroupElement::Affine { s: (s1 + t1 * s2) % n, t: (t1 * t2) % n });
        }
        Ok(GroupElement::Perm(self.to_perm(ctx)?.compose(&other.to_perm(ctx)?)))
    }
}

fn affine_on_subdivided(s: usize, t: usize, v: usize, sub: &SubdividedSpec) -> Result<usize> {
    let n = sub.n();
    let image = |a: usize| (s + t * a) % n;
    match SubVertex::from_index(v, n, sub.p()).expect("checked by caller") {
        SubVertex::U(a) => Ok(image(a)),
        SubVertex::V(a, r) => {
            let g = sub.subdivided_generator();
            let tg = t * g % n;
            if tg == g % n {
                Ok(sub.v(image(a) as i64, r))
            } else if tg == neg_mod(g, n) {
                Ok(sub.v(image(a) as i64 - g as i64, sub.p() + 1 - r))
            } else {
                Err(Error::ContextMismatch("t must map the subdivided generator to ±itself"))
            }
        }
    }
}

fn beta(flips: &Bits, y: usize, sub: &SubdividedSpec) -> usize {
    let (n, j, p) = (sub.n(), sub.base().j(), sub.p());
    match SubVertex::from_index(y, n, p).expect("in range") {
        SubVertex::V(c, r) if flips.get(c % j) => sub.v((c + j) as i64, p + 1 - r),
        _ => y,
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Affine { s, t } => write!(f, "affine({s},{t})"),
            GroupElement::FlipAffine { flips, s, t } => write!(f, "flipaffine({flips},{s},{t})"),
            GroupElement::BetaAffine { flips, s, t } => write!(f, "betaaffine({flips},{s},{t})"),
            GroupElement::Perm(p) => p.fmt(f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureTag {
    ZnH,
    ZnHprime,
    Symmetric(usize),
    Z2xS5,
    /// Twin-class permutations of `C_6(1,3)` or `C_8(1,3)` with the swap of
    /// the two classes.
    WreathLike(usize),
    FlipZnPm,
    BetaZ2jPm,
}

impl fmt::Display for StructureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureTag::ZnH => f.write_str("ZnH"),
            StructureTag::ZnHprime => f.write_str("ZnH'"),
            StructureTag::Symmetric(n) => write!(f, "S_{n}"),
            StructureTag::Z2xS5 => f.write_str("Z2xS5"),
            StructureTag::WreathLike(n) => write!(f, "WreathLike(C_{n}(1,3))"),
            StructureTag::FlipZnPm => f.write_str("FlipZnPm"),
            StructureTag::BetaZ2jPm => f.write_str("BetaZ2jPm"),
        }
    }
}

/// A fully enumerated automorphism group acting on `context`.
#[derive(Debug, Clone)]
pub struct AutGroup {
    pub context: GraphSpec,
    pub structure_tag: StructureTag,
    /// Every element, identity first.
    pub elements: Vec<GroupElement>,
    pub generators: Vec<GroupElement>,
}

impl AutGroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn perms(&self) -> Result<Vec<Perm>> {
        self.elements.iter().map(|e| e.to_perm(&self.context)).collect()
    }
}

/// All permutations of `0..k` in lexicographic order.
pub(crate) fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..k).collect();
    let mut out = alloc::vec![cur.clone()];
    loop {
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else { return out };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

fn cycle(k: usize) -> Vec<usize> {
    (0..k).map(|x| (x + 1) % k).collect()
}

fn transposition(k: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..k).collect();
    p.swap(a, b);
    p
}

/// `C_6(1,3)` / `C_8(1,3)`: permute each parity class, then optionally shift by 1.
fn wreath_like(n: usize) -> (Vec<GroupElement>, Vec<GroupElement>) {
    let k = n / 2;
    let sym = all_permutations(k);
    let build = |even: &[usize], odd: &[usize], shift: usize| -> Perm {
        Perm((0..n)
            .map(|x| {
                let w = if x % 2 == 0 { 2 * even[x / 2] } else { 2 * odd[x / 2] + 1 };
                (w + shift) % n
            })
            .collect())
    };
    let mut elements = Vec::with_capacity(2 * sym.len() * sym.len());
    for shift in 0..2 {
        for even in &sym {
            for odd in &sym {
                elements.push(GroupElement::Perm(build(even, odd, shift)));
            }
        }
    }
    let id: Vec<usize> = (0..k).collect();
    let generators = alloc::vec![
        GroupElement::Perm(build(&transposition(k, 0, 1), &id, 0)),
        GroupElement::Perm(build(&cycle(k), &id, 0)),
        GroupElement::Perm(build(&id, &id, 1)),
    ];
    (elements, generators)
}

/// `C_10(1,3)`: its complement is `K_5 □ K_2`. Even `x` is label `x/2` on
/// side 0; odd `x` is label `((x + 5) mod 10)/2` on side 1.
fn z2_x_s5() -> (Vec<GroupElement>, Vec<GroupElement>) {
    let vertex = |side: usize, label: usize| if side == 0 { 2 * label } else { (2 * label + 5) % 10 };
    let coords = |x: usize| if x.is_multiple_of(2) { (0, x / 2) } else { (1, ((x + 5) % 10) / 2) };
    let build = |sigma: &[usize], swap: usize| -> Perm {
        Perm((0..10)
            .map(|x| {
                let (side, label) = coords(x);
                vertex(side ^ swap, sigma[label])
            })
            .collect())
    };
    let mut elements = Vec::with_capacity(240);
    for swap in 0..2 {
        for sigma in all_permutations(5) {
            elements.push(GroupElement::Perm(build(&sigma, swap)));
        }
    }
    let id: Vec<usize> = (0..5).collect();
    let generators = alloc::vec![
        GroupElement::Perm(build(&transposition(5, 0, 1), 0)),
        GroupElement::Perm(build(&cycle(5), 0)),
        GroupElement::Perm(build(&id, 1)),
    ];
    (elements, generators)
}

fn affine_group(n: usize, units: &[usize]) -> (Vec<GroupElement>, Vec<GroupElement>) {
    let elements = units.iter().flat_map(|&t| (0..n).map(move |s| GroupElement::affine(s, t))).collect();
    let generators = core::iter::once(GroupElement::affine(1 % n, 1))
        .chain(units.iter().filter(|&&t| t != 1).map(|&t| GroupElement::affine(0, t)))
        .collect();
    (elements, generators)
}

fn flip_generators(n: usize) -> Vec<GroupElement> {
    let half = n / 2;
    let mut generators = alloc::vec![
        GroupElement::FlipAffine { flips: Bits::zero(half), s: 1, t: 1 },
        GroupElement::FlipAffine { flips: Bits::zero(half), s: 0, t: n - 1 },
    ];
    generators.extend((1..half).map(|k| GroupElement::FlipAffine { flips: Bits::single(half, k), s: 0, t: 1 }));
    generators
}

fn flip_group(n: usize) -> Result<(Vec<GroupElement>, Vec<GroupElement>)> {
    let half = n / 2;
    if half > 16 {
        return Err(Error::BudgetExceeded { what: "flip-affine groups are enumerated for n <= 32", limit: 32 });
    }
    let mut elements = Vec::new();
    for t in [1, n - 1] {
        for s in 0..n {
            // canonical form: bit 0 clear
            for mask in (0..1u64 << (half - 1)).map(|m| m << 1) {
                elements.push(GroupElement::FlipAffine { flips: Bits::new(half, mask), s, t });
            }
        }
    }
    Ok((elements, flip_generators(n)))
}

fn beta_generators(j: usize) -> Vec<GroupElement> {
    let n = 2 * j;
    alloc::vec![
        GroupElement::BetaAffine { flips: Bits::zero(j), s: 1, t: 1 },
        GroupElement::BetaAffine { flips: Bits::zero(j), s: 0, t: n - 1 },
        GroupElement::BetaAffine { flips: Bits::single(j, 0), s: 0, t: 1 },
    ]
}

fn beta_group(j: usize) -> Result<(Vec<GroupElement>, Vec<GroupElement>)> {
    if j > 14 {
        return Err(Error::BudgetExceeded { what: "beta-affine groups are enumerated for j <= 14", limit: 14 });
    }
    let n = 2 * j;
    let mut elements = Vec::with_capacity((1 << j) * 2 * n);
    for t in [1, n - 1] {
        for s in 0..n {
            for mask in 0..1u64 << j {
                elements.push(GroupElement::BetaAffine { flips: Bits::new(j, mask), s, t });
            }
        }
    }
    Ok((elements, beta_generators(j)))
}

fn base_group(spec: &CirculantSpec) -> Result<(StructureTag, Vec<GroupElement>, Vec<GroupElement>)> {
    spec.require_connected()?;
    let n = spec.n();
    Ok(match twin_class_of(spec) {
        TwinClass::TwinFree => {
            let h = symbol_stabilizer(n, spec.i(), spec.j())?.h;
            let (e, g) = affine_group(n, &h);
            (StructureTag::ZnH, e, g)
        }
        TwinClass::CompleteGraph => {
            let elements = all_permutations(n).into_iter().map(|p| GroupElement::Perm(Perm(p))).collect();
            let generators = alloc::vec![
                GroupElement::Perm(Perm(transposition(n, 0, 1))),
                GroupElement::Perm(Perm(cycle(n))),
            ];
            (StructureTag::Symmetric(n), elements, generators)
        }
        TwinClass::Six13 | TwinClass::Eight13 => {
            let (e, g) = wreath_like(n);
            (StructureTag::WreathLike(n), e, g)
        }
        TwinClass::CoTwin1013 => {
            let (e, g) = z2_x_s5();
            (StructureTag::Z2xS5, e, g)
        }
        TwinClass::HalfSum => {
            let (e, g) = flip_group(n)?;
            (StructureTag::FlipZnPm, e, g)
        }
        TwinClass::SubdividedPairs => unreachable!("base graphs never classify as subdivided"),
    })
}

pub fn closed_form_group(spec: &GraphSpec) -> Result<AutGroup> {
    let (structure_tag, elements, generators) = match spec {
        GraphSpec::Base(b) => base_group(b)?,
        GraphSpec::Subdivided(sub) => match sub.regime() {
            ArcRegime::GenericArc => {
                let b = sub.base();
                let hp = symbol_stabilizer(b.n(), b.i(), b.j())?.h_prime;
                let (e, g) = affine_group(b.n(), &hp);
                (StructureTag::ZnHprime, e, g)
            }
            ArcRegime::HalfSumArc => {
                let (e, g) = beta_group(sub.base().j())?;
                (StructureTag::BetaZ2jPm, e, g)
            }
        },
    };
    Ok(AutGroup { context: *spec, structure_tag, elements, generators })
}

/// Structure tag and generators without enumerating the group; works for
/// groups too large to list.
pub fn group_generators(spec: &GraphSpec) -> Result<(StructureTag, Vec<GroupElement>)> {
    match spec {
        GraphSpec::Base(b) if twin_class_of(b) == TwinClass::HalfSum => {
            b.require_connected()?;
            Ok((StructureTag::FlipZnPm, flip_generators(b.n())))
        }
        GraphSpec::Subdivided(sub) if sub.regime() == ArcRegime::HalfSumArc => {
            Ok((StructureTag::BetaZ2jPm, beta_generators(sub.base().j())))
        }
        _ => {
            let g = closed_form_group(spec)?;
            Ok((g.structure_tag, g.generators))
        }
    }
}

fn factorial(k: u64) -> u64 {
    (1..=k).product()
}

/// The closed-form group order, without enumeration.
pub fn group_order(spec: &GraphSpec) -> Result<u64> {
    spec.base().require_connected()?;
    let b = spec.base();
    let n = b.n() as u64;
    let pow2 = |e: usize| -> Result<u64> {
        1u64.checked_shl(e as u32).filter(|_| e < 63).ok_or(Error::BudgetExceeded { what: "group order overflows u64", limit: 62 })
    };
    Ok(match spec {
        GraphSpec::Base(b) => match twin_class_of(b) {
            TwinClass::TwinFree => n * symbol_stabilizer(b.n(), b.i(), b.j())?.h.len() as u64,
            TwinClass::CompleteGraph => factorial(n),
            TwinClass::Six13 | TwinClass::Eight13 => {
                let k = n / 2;
                factorial(k) * factorial(k) * 2
            }
            TwinClass::CoTwin1013 => 2 * factorial(5),
            TwinClass::HalfSum => pow2(b.n() / 2)? * n,
            TwinClass::SubdividedPairs => unreachable!(),
        },
        GraphSpec::Subdivided(sub) => match sub.regime() {
            ArcRegime::GenericArc => n * symbol_stabilizer(b.n(), b.i(), b.j())?.h_prime.len() as u64,
            ArcRegime::HalfSumArc => pow2(b.j())? * 4 * b.j() as u64,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Mismatch(String),
    Skipped(String),
}

impl CheckStatus {
    pub fn is_pass(&self) -> bool {
        matches!(self, CheckStatus::Pass)
    }

    pub fn label(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "MATCH",
            CheckStatus::Mismatch(_) => "MISMATCH",
            CheckStatus::Skipped(_) => "SKIPPED",
        }
    }

    pub fn detail(&self) -> Option<&str> {
        match self {
            CheckStatus::Pass => None,
            CheckStatus::Mismatch(s) | CheckStatus::Skipped(s) => Some(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupVerification {
    pub spec: GraphSpec,
    pub closed_form_order: u64,
    pub brute_order: Option<u64>,
    pub status: CheckStatus,
}

/// Checks that every closed-form element is an automorphism, that the
/// induced permutations are distinct, and that their number equals the
/// brute-force automorphism count.
pub fn verify_group(spec: &GraphSpec, budget: &Budget) -> Result<GroupVerification> {
    let closed_form_order = group_order(spec)?;
    let mut report = GroupVerification { spec: *spec, closed_form_order, brute_order: None, status: CheckStatus::Pass };
    let graph = spec.build();
    let group = closed_form_group(spec)?;
    let perms = group.perms()?;
    if perms.len() as u64 != closed_form_order {
        report.status = CheckStatus::Mismatch(alloc::format!(
            "enumerated {} elements, closed form says {closed_form_order}",
            perms.len()
        ));
        return Ok(report);
    }
    if let Some((e, _)) = group.elements.iter().zip(&perms).find(|(_, p)| !graph.is_automorphism(p.as_slice())) {
        report.status = CheckStatus::Mismatch(alloc::format!("{e} is not an automorphism"));
        return Ok(report);
    }
    let distinct: BTreeSet<&Perm> = perms.iter().collect();
    if distinct.len() != perms.len() {
        report.status = CheckStatus::Mismatch(alloc::format!(
            "only {} of {} elements induce distinct permutations",
            distinct.len(),
            perms.len()
        ));
        return Ok(report);
    }
    match brute_automorphisms(&graph, budget) {
        Ok(raw) => {
            report.brute_order = Some(raw.order());
            if raw.order() != closed_form_order {
                report.status = CheckStatus::Mismatch(alloc::format!(
                    "brute force finds {} automorphisms, closed form {closed_form_order}",
                    raw.order()
                ));
            }
        }
        Err(e @ Error::BudgetExceeded { .. }) => report.status = CheckStatus::Skipped(alloc::format!("{e}")),
        Err(e) => return Err(e),
    }
    Ok(report)
}

/// `β_a` on `C_2j(i, j÷p)` as a group element.
pub fn beta_flip(sub: &SubdividedSpec, a: usize) -> GroupElement {
    let j = sub.base().j();
    GroupElement::BetaAffine { flips: Bits::single(j, a % j), s: 0, t: 1 }
}
