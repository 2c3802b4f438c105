//! Arithmetic in `Z_n`: units, the unit groups that preserve the connection
//! set `{±i, ±j}`, the special linear conditions that change common
//! neighbourhoods, and representative sets of `Z_j` inside `Z_2j`.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Reduces a signed integer into `[0, n)`.
#[inline]
pub fn reduce(x: i64, n: usize) -> usize {
    x.rem_euclid(n as i64) as usize
}

#[inline]
pub fn neg_mod(x: usize, n: usize) -> usize {
    (n - x % n) % n
}

/// Distinct prime divisors of `n`, ascending. Trial division.
pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

/// An element of `Z_n`, always stored as its canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Residue {
    value: usize,
    modulus: usize,
}

impl Residue {
    pub fn new(value: i64, modulus: usize) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Residue { value: reduce(value, modulus), modulus }
    }

    pub fn value(self) -> usize {
        self.value
    }

    pub fn modulus(self) -> usize {
        self.modulus
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value, self.modulus) == 1
    }

    /// Multiplicative inverse, if the residue is a unit.
    pub fn inverse(self) -> Option<Self> {
        let (mut old_r, mut r) = (self.value as i64, self.modulus as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        if old_r != 1 && self.modulus != 1 {
            return None;
        }
        Some(Residue::new(old_s, self.modulus))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Residue { value: (self.value + rhs.value) % self.modulus, modulus: self.modulus }
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self + (-rhs)
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue { value: neg_mod(self.value, self.modulus), modulus: self.modulus }
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Residue { value: (self.value * rhs.value) % self.modulus, modulus: self.modulus }
    }
}

/// The multiplicative group `U(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroup {
    pub modulus: usize,
    pub elements: Vec<usize>,
}

impl UnitGroup {
    pub fn contains(&self, t: usize) -> bool {
        self.elements.binary_search(&(t % self.modulus)).is_ok()
    }
}

pub fn units(n: usize) -> Result<UnitGroup> {
    if n < 3 {
        return Err(Error::InvalidModulus(n));
    }
    Ok(UnitGroup { modulus: n, elements: (1..n).filter(|&t| gcd(t, n) == 1).collect() })
}

/// `H` (units preserving `{±i, ±j}`) and `H'` (units preserving `{±i}` and
/// `{±j}` separately).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolStabilizer {
    pub modulus: usize,
    pub i: usize,
    pub j: usize,
    pub h: Vec<usize>,
    pub h_prime: Vec<usize>,
}

impl SymbolStabilizer {
    /// True when `H' = {±1}`.
    pub fn h_prime_is_trivial(&self) -> bool {
        self.h_prime.len() == 2
    }
}

fn check_normalized(n: usize, i: usize, j: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidModulus(n));
    }
    if !(0 < i && i < j && 2 * j <= n) {
        return Err(Error::NormalizationRequired { n, i, j });
    }
    let g = gcd(gcd(n, i), j);
    if g != 1 {
        return Err(Error::Disconnected { n, i, j, components: g });
    }
    Ok(())
}

fn pm_set(x: usize, n: usize) -> [usize; 2] {
    let a = x % n;
    let b = neg_mod(a, n);
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

fn preserves_pm(t: usize, x: usize, n: usize) -> bool {
    let tx = (t * x) % n;
    tx == x % n || tx == neg_mod(x, n)
}

pub fn symbol_stabilizer(n: usize, i: usize, j: usize) -> Result<SymbolStabilizer> {
    check_normalized(n, i, j)?;
    let u = units(n)?;
    let mut symbol: Vec<usize> = pm_set(i, n).into_iter().chain(pm_set(j, n)).collect();
    symbol.sort_unstable();
    symbol.dedup();

    let h: Vec<usize> = u
        .elements
        .iter()
        .copied()
        .filter(|&t| {
            let mut image: Vec<usize> = symbol.iter().map(|&x| (t * x) % n).collect();
            image.sort_unstable();
            image == symbol
        })
        .collect();
    let h_prime = h
        .iter()
        .copied()
        .filter(|&t| preserves_pm(t, i, n) && preserves_pm(t, j, n))
        .collect();
    Ok(SymbolStabilizer { modulus: n, i, j, h, h_prime })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpecialCondition {
    /// `4i ≡ 0`
    FourI,
    /// `4j ≡ 0`
    FourJ,
    /// `3i ≡ j`
    ThreeIJ,
    /// `3i ≡ -j`
    ThreeIMinusJ,
    /// `3j ≡ i`
    ThreeJI,
    /// `3j ≡ -i`
    ThreeJMinusI,
}

impl SpecialCondition {
    pub const ALL: [SpecialCondition; 6] = [
        SpecialCondition::FourI,
        SpecialCondition::FourJ,
        SpecialCondition::ThreeIJ,
        SpecialCondition::ThreeIMinusJ,
        SpecialCondition::ThreeJI,
        SpecialCondition::ThreeJMinusI,
    ];

    pub fn holds(self, n: usize, i: usize, j: usize) -> bool {
        let (i, j) = (i as i64, j as i64);
        let r = |x: i64| reduce(x, n) == 0;
        match self {
            SpecialCondition::FourI => r(4 * i),
            SpecialCondition::FourJ => r(4 * j),
            SpecialCondition::ThreeIJ => r(3 * i - j),
            SpecialCondition::ThreeIMinusJ => r(3 * i + j),
            SpecialCondition::ThreeJI => r(3 * j - i),
            SpecialCondition::ThreeJMinusI => r(3 * j + i),
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            SpecialCondition::FourI => "4i≡0",
            SpecialCondition::FourJ => "4j≡0",
            SpecialCondition::ThreeIJ => "3i≡j",
            SpecialCondition::ThreeIMinusJ => "3i≡-j",
            SpecialCondition::ThreeJI => "3j≡i",
            SpecialCondition::ThreeJMinusI => "3j≡-i",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SpecialConditionSet {
    bits: u8,
}

impl SpecialConditionSet {
    pub fn contains(self, c: SpecialCondition) -> bool {
        self.bits & (1 << c as u8) != 0
    }

    pub fn insert(&mut self, c: SpecialCondition) {
        self.bits |= 1 << c as u8;
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn iter(self) -> impl Iterator<Item = SpecialCondition> {
        SpecialCondition::ALL.into_iter().filter(move |&c| self.contains(c))
    }
}

impl FromIterator<SpecialCondition> for SpecialConditionSet {
    fn from_iter<I: IntoIterator<Item = SpecialCondition>>(iter: I) -> Self {
        let mut set = SpecialConditionSet::default();
        for c in iter {
            set.insert(c);
        }
        set
    }
}

/// The special conditions that hold for `(n, i, j)`; only meaningful when
/// `j < n/2`.
pub fn special_conditions(n: usize, i: usize, j: usize) -> Result<SpecialConditionSet> {
    check_normalized(n, i, j)?;
    if 2 * j == n {
        return Err(Error::WrongRegime("special conditions need j < n/2"));
    }
    Ok(SpecialCondition::ALL.into_iter().filter(|c| c.holds(n, i, j)).collect())
}

/// Returns `a = b - i (mod n)`, where `b` is the product of the primes that
/// divide `n` but not `i`. Then `a` is a unit and `a + i` is not. `None` when
/// every prime divisor of `n` divides `i`.
pub fn unit_with_nonunit_shift(n: usize, i: usize) -> Option<usize> {
    let b: usize = prime_divisors(n).into_iter().filter(|p| !i.is_multiple_of(*p)).product();
    if b == 1 {
        return None;
    }
    let a = reduce(b as i64 - i as i64, n);
    debug_assert_eq!(gcd(a, n), 1);
    debug_assert_ne!(gcd((a + i) % n, n), 1);
    Some(a)
}

/// A set of representatives of `Z_j` in `Z_2j`: `members[k]` is `k` or `k + j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepSet {
    j: usize,
    members: Vec<usize>,
}

impl RepSet {
    /// `members` is read positionally, so `members[k]` must be `k` or `k + j`.
    pub fn new(j: usize, members: Vec<usize>) -> Result<Self> {
        if j == 0 || members.len() != j {
            return Err(Error::InvariantViolation(alloc::format!(
                "a representative set for j = {j} needs exactly {j} members"
            )));
        }
        for (k, &a) in members.iter().enumerate() {
            if a != k && a != k + j {
                return Err(Error::InvariantViolation(alloc::format!(
                    "member {a} at position {k} is neither {k} nor {}",
                    k + j
                )));
            }
        }
        Ok(RepSet { j, members })
    }

    /// Builds a representative set from residues in any order.
    pub fn from_residues(j: usize, residues: &[usize]) -> Result<Self> {
        let mut members = alloc::vec![usize::MAX; j];
        for &a in residues {
            let k = a % j.max(1);
            if a >= 2 * j || members[k] != usize::MAX {
                return Err(Error::InvariantViolation(alloc::format!(
                    "{residues:?} is not a set of representatives of Z_{j} in Z_{}",
                    2 * j
                )));
            }
            members[k] = a;
        }
        RepSet::new(j, members)
    }

    /// The representative set whose `k`-th member is `k + j` exactly when bit
    /// `k` of `mask` is set.
    pub fn from_mask(j: usize, mask: u64) -> Self {
        let members = (0..j).map(|k| if mask >> k & 1 == 1 { k + j } else { k }).collect();
        RepSet { j, members }
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, a: usize) -> bool {
        let a = a % (2 * self.j);
        self.members[a % self.j] == a
    }

    /// Whether `x -> s + t x (mod 2j)` maps the set onto itself.
    pub fn is_preserved_by(&self, s: usize, t: usize) -> bool {
        let m = 2 * self.j;
        self.members.iter().all(|&a| self.contains((s + t * a) % m))
    }
}

/// All `2^j` representative sets, ordered by mask.
pub fn representative_sets(j: usize) -> Result<Vec<RepSet>> {
    if !(2..=20).contains(&j) {
        return Err(Error::InvariantViolation(alloc::format!(
            "representative sets are enumerated for 2 <= j <= 20, got {j}"
        )));
    }
    Ok((0..1u64 << j).map(|mask| RepSet::from_mask(j, mask)).collect())
}

/// All `(s, t)` in `Z_2j ⋊ {±1}` preserving `set`, with `t` given as a
/// residue (`1` or `2j - 1`). Identity first, then translations, then
/// reflections, each by ascending `s`.
pub fn preserving_affines(j: usize, set: &RepSet) -> Result<Vec<(usize, usize)>> {
    if set.j != j {
        return Err(Error::InvariantViolation(alloc::format!(
            "representative set is for j = {}, not {j}",
            set.j
        )));
    }
    RepSet::new(j, set.members.clone())?;
    let m = 2 * j;
    Ok([1, m - 1]
        .into_iter()
        .flat_map(|t| (0..m).map(move |s| (s, t)))
        .filter(|&(s, t)| set.is_preserved_by(s, t))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn units_examples() {
        assert_eq!(units(12).unwrap().elements, vec![1, 5, 7, 11]);
        assert_eq!(units(7).unwrap().elements, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(units(8).unwrap().elements, vec![1, 3, 5, 7]);
        assert_eq!(units(2), Err(Error::InvalidModulus(2)));
    }

    #[test]
    fn residue_arithmetic() {
        let a = Residue::new(-3, 10);
        assert_eq!(a.value(), 7);
        assert_eq!((a * Residue::new(3, 10)).value(), 1);
        assert_eq!(a.inverse(), Some(Residue::new(3, 10)));
        assert_eq!(Residue::new(4, 10).inverse(), None);
        assert_eq!((a - Residue::new(9, 10)).value(), 8);
    }

    #[test]
    fn stabilizer_examples() {
        let s = symbol_stabilizer(12, 2, 3).unwrap();
        assert_eq!(s.h, vec![1, 5, 7, 11]);
        assert_eq!(s.h_prime, vec![1, 5, 7, 11]);

        let s = symbol_stabilizer(8, 1, 3).unwrap();
        assert_eq!(s.h, vec![1, 3, 5, 7]);
        assert_eq!(s.h_prime, vec![1, 7]);

        let s = symbol_stabilizer(10, 1, 4).unwrap();
        assert_eq!(s.h, vec![1, 9]);
        assert_eq!(s.h_prime, vec![1, 9]);
    }

    #[test]
    fn stabilizer_rejects_unnormalized() {
        assert!(matches!(
            symbol_stabilizer(10, 9, 4),
            Err(Error::NormalizationRequired { .. })
        ));
        assert!(matches!(symbol_stabilizer(10, 2, 4), Err(Error::Disconnected { .. })));
    }

    #[test]
    fn special_condition_examples() {
        let c = special_conditions(12, 3, 5).unwrap();
        assert_eq!(
            c.iter().collect::<Vec<_>>(),
            vec![SpecialCondition::FourI, SpecialCondition::ThreeJI]
        );
        let c = special_conditions(10, 1, 3).unwrap();
        assert_eq!(
            c.iter().collect::<Vec<_>>(),
            vec![SpecialCondition::ThreeIJ, SpecialCondition::ThreeJMinusI]
        );
        assert!(special_conditions(13, 1, 5).unwrap().is_empty());
        assert!(matches!(special_conditions(10, 3, 5), Err(Error::WrongRegime(_))));
    }

    #[test]
    fn special_conditions_agree_with_direct_congruences() {
        for n in 5..60usize {
            for i in 1..n / 2 {
                for j in i + 1..n.div_ceil(2) {
                    let Ok(c) = special_conditions(n, i, j) else { continue };
                    let (ni, nj, m) = (i as i64, j as i64, n as i64);
                    let direct = [4 * ni, 4 * nj, 3 * ni - nj, 3 * ni + nj, 3 * nj - ni, 3 * nj + ni]
                        .map(|x| x.rem_euclid(m) == 0);
                    for (k, cond) in SpecialCondition::ALL.iter().enumerate() {
                        assert_eq!(c.contains(*cond), direct[k], "({n},{i},{j}) {}", cond.describe());
                    }
                }
            }
        }
    }

    #[test]
    fn nonunit_shift_examples() {
        assert_eq!(unit_with_nonunit_shift(12, 2), Some(1));
        assert_eq!(unit_with_nonunit_shift(10, 3), Some(7));
        assert_eq!(unit_with_nonunit_shift(4, 2), None);
    }

    #[test]
    fn nonunit_shift_matches_existence() {
        for n in 3..80 {
            for i in 1..n {
                if 2 * i >= n {
                    continue;
                }
                let exists = (0..n).any(|a| gcd(a, n) == 1 && gcd((a + i) % n, n) != 1);
                match unit_with_nonunit_shift(n, i) {
                    Some(a) => {
                        assert_eq!(gcd(a, n), 1);
                        assert_ne!(gcd((a + i) % n, n), 1);
                    }
                    None => assert!(!exists, "n={n} i={i}"),
                }
            }
        }
    }

    #[test]
    fn repset_preservers() {
        let s = RepSet::new(2, vec![0, 1]).unwrap();
        assert!(preserving_affines(2, &s).unwrap().contains(&(1, 3)));
        let s = RepSet::new(3, vec![0, 1, 5]).unwrap();
        assert!(preserving_affines(3, &s).unwrap().contains(&(0, 5)));
        let s = RepSet::new(6, vec![0, 1, 8, 3, 4, 5]).unwrap();
        assert_eq!(preserving_affines(6, &s).unwrap(), vec![(0, 1)]);
    }

    #[test]
    fn repset_validation() {
        assert!(RepSet::new(3, vec![0, 4, 3]).is_err());
        assert!(RepSet::new(3, vec![0, 1]).is_err());
        assert_eq!(RepSet::from_residues(3, &[5, 0, 1]).unwrap().members(), &[0, 1, 5]);
        assert!(RepSet::from_residues(3, &[0, 3, 1]).is_err());
        assert_eq!(representative_sets(4).unwrap().len(), 16);
    }

    #[test]
    fn small_j_always_has_a_reflection_preserver() {
        for j in 2..=5 {
            for s in representative_sets(j).unwrap() {
                let pres = preserving_affines(j, &s).unwrap();
                assert!(pres.iter().any(|&(_, t)| t == 2 * j - 1), "{s:?}");
            }
        }
    }
}
