//! Finite T0 spaces, given by their specialization posets, and the cone of
//! lower semicontinuous functions into the extended reals.
//!
//! Open sets of a finite space are exactly the up-sets of its
//! specialization order, so a function is lower semicontinuous iff it is
//! monotone.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extreal::ExtReal;

/// Largest poset this module represents (bitset width).
pub const MAX_ELEMENTS: usize = 64;

/// Default bound for enumerating every open set.
pub const DEFAULT_OPEN_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation table is not square")]
    NotSquare,
    #[error("element {0} is not related to itself")]
    NotReflexive(usize),
    #[error("{0} <= {1} and {1} <= {0} for distinct elements")]
    NotAntisymmetric(usize, usize),
    #[error("{0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("element index {0} out of range")]
    BadElement(usize),
    #[error("{size} elements exceeds the limit of {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("empty poset")]
    Empty,
    #[error("set is not an up-set")]
    NotUpSet,
    #[error("functions live on different posets")]
    PosetMismatch,
    #[error("value table has {found} entries, poset has {expected} elements")]
    WrongLength { expected: usize, found: usize },
    #[error("not monotone: f({0}) > f({1}) although {0} <= {1}")]
    NotLsc(usize, usize),
}

/// A finite partial order on `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    size: usize,
    /// `up[i]` has bit `j` set iff `i <= j`.
    up: Vec<u64>,
}

impl FinitePoset {
    /// Validates a full relation table (`table[i][j]` means `i <= j`).
    pub fn validate(table: &[Vec<bool>]) -> Result<Self, PosetError> {
        let n = table.len();
        if n == 0 {
            return Err(PosetError::Empty);
        }
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge { size: n, limit: MAX_ELEMENTS });
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(PosetError::NotSquare);
        }
        let up = table
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &b)| if b { acc | (1 << j) } else { acc })
            })
            .collect();
        Self::from_up_masks(n, up)
    }

    fn from_up_masks(size: usize, up: Vec<u64>) -> Result<Self, PosetError> {
        let p = FinitePoset { size, up };
        for i in 0..size {
            if !p.leq(i, i) {
                return Err(PosetError::NotReflexive(i));
            }
        }
        for i in 0..size {
            for j in (i + 1)..size {
                if p.leq(i, j) && p.leq(j, i) {
                    return Err(PosetError::NotAntisymmetric(i, j));
                }
            }
        }
        for i in 0..size {
            for j in p.elements_of(p.up[i]) {
                for k in p.elements_of(p.up[j]) {
                    if !p.leq(i, k) {
                        return Err(PosetError::NotTransitive(i, j, k));
                    }
                }
            }
        }
        Ok(p)
    }

    /// Builds from listed pairs `i <= j`; reflexive pairs are implied, but
    /// the listed relation must already be transitive.
    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut up = Self::base_masks(size)?;
        for &(i, j) in pairs {
            if i >= size || j >= size {
                return Err(PosetError::BadElement(i.max(j)));
            }
            up[i] |= 1 << j;
        }
        Self::from_up_masks(size, up)
    }

    /// Builds the reflexive-transitive closure of the listed pairs.
    pub fn from_cover_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut up = Self::base_masks(size)?;
        for &(i, j) in pairs {
            if i >= size || j >= size {
                return Err(PosetError::BadElement(i.max(j)));
            }
            up[i] |= 1 << j;
        }
        loop {
            let mut changed = false;
            for i in 0..size {
                let mut closure = up[i];
                for j in 0..size {
                    if up[i] & (1 << j) != 0 {
                        closure |= up[j];
                    }
                }
                if closure != up[i] {
                    up[i] = closure;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Self::from_up_masks(size, up)
    }

    fn base_masks(size: usize) -> Result<Vec<u64>, PosetError> {
        if size == 0 {
            return Err(PosetError::Empty);
        }
        if size > MAX_ELEMENTS {
            return Err(PosetError::TooLarge { size, limit: MAX_ELEMENTS });
        }
        Ok((0..size).map(|i| 1u64 << i).collect())
    }

    pub fn chain(size: usize) -> Self {
        let pairs: Vec<_> = (1..size).map(|i| (i - 1, i)).collect();
        Self::from_cover_pairs(size, &pairs).expect("chain is a poset")
    }

    pub fn antichain(size: usize) -> Self {
        Self::from_pairs(size, &[]).expect("antichain is a poset")
    }

    /// The Sierpinski space: `0 < 1`, with `{1}` the only proper nonempty open.
    pub fn sierpinski() -> Self {
        Self::chain(2)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i] & (1 << j) != 0
    }

    /// `{ j : i <= j }`.
    pub fn up_of(&self, i: usize) -> OpenSet {
        OpenSet(self.up[i])
    }

    fn elements_of(&self, mask: u64) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |j| mask & (1 << j) != 0)
    }

    pub fn full(&self) -> OpenSet {
        OpenSet(if self.size == 64 { u64::MAX } else { (1u64 << self.size) - 1 })
    }

    pub fn is_up_set(&self, set: OpenSet) -> bool {
        set.0 & !self.full().0 == 0
            && (0..self.size).all(|i| set.0 & (1 << i) == 0 || set.0 & self.up[i] == self.up[i])
    }

    /// All `i <= j` pairs with `i != j`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in 0..self.size {
                if i != j && self.leq(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Whether `i <= j` implies `i <= j` numerically.
    pub fn is_naturally_labeled(&self) -> bool {
        self.strict_pairs().iter().all(|&(i, j)| i < j)
    }

    /// Every open set (up-set), sorted by bitmask. Fails above `limit` elements.
    pub fn all_opens(&self, limit: usize) -> Result<Vec<OpenSet>, PosetError> {
        if self.size > limit || self.size >= 63 {
            return Err(PosetError::TooLarge { size: self.size, limit });
        }
        Ok((0..(1u64 << self.size))
            .map(OpenSet)
            .filter(|&s| self.is_up_set(s))
            .collect())
    }

    pub fn to_relation(&self) -> PosetJson {
        PosetJson {
            size: self.size,
            leq: self.strict_pairs(),
        }
    }
}

/// JSON form: `{"size": n, "leq": [[i, j], ...]}`; reflexive pairs optional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub size: usize,
    #[serde(default)]
    pub leq: Vec<(usize, usize)>,
}

impl TryFrom<PosetJson> for FinitePoset {
    type Error = PosetError;
    fn try_from(p: PosetJson) -> Result<Self, PosetError> {
        FinitePoset::from_pairs(p.size, &p.leq)
    }
}

/// A subset of a finite poset, as a bitmask over its elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OpenSet(pub u64);

impl OpenSet {
    pub fn empty() -> Self {
        OpenSet(0)
    }

    pub fn from_elements(elems: &[usize]) -> Self {
        OpenSet(elems.iter().fold(0, |acc, &e| acc | (1 << e)))
    }

    pub fn contains(&self, x: usize) -> bool {
        x < 64 && self.0 & (1 << x) != 0
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..64).filter(|&i| self.contains(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: &OpenSet) -> OpenSet {
        OpenSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: &OpenSet) -> OpenSet {
        OpenSet(self.0 & other.0)
    }

    pub fn without(&self, x: usize) -> OpenSet {
        OpenSet(self.0 & !(1 << x))
    }
}

impl fmt::Display for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", elems.join(","))
    }
}

impl Serialize for OpenSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.elements().serialize(s)
    }
}

impl<'de> Deserialize<'de> for OpenSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let elems = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = elems.iter().find(|&&e| e >= 64) {
            return Err(serde::de::Error::custom(format!("element {bad} out of range")));
        }
        Ok(OpenSet::from_elements(&elems))
    }
}

/// First pair `(x, y)` with `x <= y` but `values[x] > values[y]`.
pub fn lsc_violation(values: &[ExtReal], poset: &FinitePoset) -> Option<(usize, usize)> {
    poset
        .strict_pairs()
        .into_iter()
        .find(|&(x, y)| values[x] > values[y])
}

pub fn is_lsc(values: &[ExtReal], poset: &FinitePoset) -> bool {
    lsc_violation(values, poset).is_none()
}

/// A monotone (= lower semicontinuous) function on a finite poset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LscFun {
    poset: Arc<FinitePoset>,
    values: Vec<ExtReal>,
}

impl LscFun {
    pub fn new(poset: Arc<FinitePoset>, values: Vec<ExtReal>) -> Result<Self, PosetError> {
        if values.len() != poset.size() {
            return Err(PosetError::WrongLength {
                expected: poset.size(),
                found: values.len(),
            });
        }
        if let Some((x, y)) = lsc_violation(&values, &poset) {
            return Err(PosetError::NotLsc(x, y));
        }
        Ok(LscFun { poset, values })
    }

    pub fn constant(poset: Arc<FinitePoset>, value: ExtReal) -> Self {
        let values = vec![value; poset.size()];
        LscFun { poset, values }
    }

    pub fn zero(poset: Arc<FinitePoset>) -> Self {
        Self::constant(poset, ExtReal::zero())
    }

    /// `r` on `set`, `0` elsewhere.
    pub fn step(poset: Arc<FinitePoset>, r: ExtReal, set: OpenSet) -> Result<Self, PosetError> {
        if !poset.is_up_set(set) {
            return Err(PosetError::NotUpSet);
        }
        let values = (0..poset.size())
            .map(|x| if set.contains(x) { r.clone() } else { ExtReal::zero() })
            .collect();
        Ok(LscFun { poset, values })
    }

    pub fn poset(&self) -> &Arc<FinitePoset> {
        &self.poset
    }

    pub fn values(&self) -> &[ExtReal] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &ExtReal {
        &self.values[x]
    }

    fn same_poset(&self, other: &LscFun) -> Result<(), PosetError> {
        if Arc::ptr_eq(&self.poset, &other.poset) || self.poset == other.poset {
            Ok(())
        } else {
            Err(PosetError::PosetMismatch)
        }
    }

    fn zip_with(
        &self,
        other: &LscFun,
        op: impl Fn(&ExtReal, &ExtReal) -> ExtReal,
    ) -> Result<LscFun, PosetError> {
        self.same_poset(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| op(a, b)).collect();
        Ok(LscFun {
            poset: self.poset.clone(),
            values,
        })
    }

    pub fn add(&self, other: &LscFun) -> Result<LscFun, PosetError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn scale(&self, r: &ExtReal) -> LscFun {
        LscFun {
            poset: self.poset.clone(),
            values: self.values.iter().map(|v| r * v).collect(),
        }
    }

    pub fn join(&self, other: &LscFun) -> Result<LscFun, PosetError> {
        self.zip_with(other, |a, b| a.max(b).clone())
    }

    pub fn meet(&self, other: &LscFun) -> Result<LscFun, PosetError> {
        self.zip_with(other, |a, b| a.min(b).clone())
    }

    /// Pointwise supremum; the empty family gives the zero function.
    pub fn sup(poset: &Arc<FinitePoset>, family: &[LscFun]) -> Result<LscFun, PosetError> {
        family
            .iter()
            .try_fold(LscFun::zero(poset.clone()), |acc, f| acc.join(f))
    }

    /// Pointwise infimum of a nonempty family.
    pub fn inf(family: &[LscFun]) -> Result<LscFun, PosetError> {
        let (first, rest) = family.split_first().ok_or(PosetError::Empty)?;
        rest.iter().try_fold(first.clone(), |acc, f| acc.meet(f))
    }

    pub fn leq(&self, other: &LscFun) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// Steps `r * chi_U` whose pointwise supremum is `self`: one per
    /// distinct positive value `r`, with `U = { x : f(x) >= r }`.
    pub fn to_steps(&self) -> Vec<(ExtReal, OpenSet)> {
        let distinct: BTreeSet<&ExtReal> = self.values.iter().filter(|v| !v.is_zero()).collect();
        distinct
            .into_iter()
            .map(|r| {
                let set = (0..self.poset.size())
                    .filter(|&x| self.values[x] >= *r)
                    .fold(OpenSet::empty(), |acc, x| OpenSet(acc.0 | (1 << x)));
                (r.clone(), set)
            })
            .collect()
    }

    /// Partial suprema of the steps, an increasing chain ending in `self`.
    pub fn step_chain(&self) -> Vec<LscFun> {
        let mut acc = LscFun::zero(self.poset.clone());
        let mut chain = Vec::new();
        for (r, set) in self.to_steps() {
            let step = LscFun::step(self.poset.clone(), r, set).expect("super-level sets are open");
            acc = acc.join(&step).expect("same poset");
            chain.push(acc.clone());
        }
        chain
    }
}

/// All posets on `n` elements up to isomorphism, each naturally labeled
/// and given by its lexicographically least relation over all labelings.
pub fn posets_up_to_iso(n: usize) -> Vec<FinitePoset> {
    assert!((1..=6).contains(&n), "enumeration supports 1..=6 elements");
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for bits in 0u32..(1 << slots.len()) {
        let pairs: Vec<(usize, usize)> = slots
            .iter()
            .enumerate()
            .filter(|(k, _)| bits & (1 << k) != 0)
            .map(|(_, &p)| p)
            .collect();
        let Ok(p) = FinitePoset::from_pairs(n, &pairs) else {
            continue;
        };
        let key = perms
            .iter()
            .filter_map(|perm| relabel_key(&p, perm))
            .min()
            .expect("identity labeling is natural");
        if seen.insert(key) {
            out.push(p);
        }
    }
    out
}

/// Relation bitmask under `perm`, if that labeling is natural.
fn relabel_key(p: &FinitePoset, perm: &[usize]) -> Option<u64> {
    let n = p.size();
    let mut key = 0u64;
    for (i, j) in p.strict_pairs() {
        let (a, b) = (perm[i], perm[j]);
        if a > b {
            return None;
        }
        key |= 1 << (a * n + b);
    }
    Some(key)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vals(xs: &[u64]) -> Vec<ExtReal> {
        xs.iter().map(|&x| ExtReal::from(x)).collect()
    }

    #[test]
    fn validation() {
        assert!(FinitePoset::from_pairs(2, &[(0, 1)]).is_ok());
        assert_eq!(
            FinitePoset::from_pairs(2, &[(0, 1), (1, 0)]),
            Err(PosetError::NotAntisymmetric(0, 1))
        );
        assert!(FinitePoset::from_pairs(2, &[]).is_ok());
        assert_eq!(
            FinitePoset::validate(&[vec![true, false], vec![false, false]]),
            Err(PosetError::NotReflexive(1))
        );
        assert_eq!(
            FinitePoset::from_pairs(3, &[(0, 1), (1, 2)]),
            Err(PosetError::NotTransitive(0, 1, 2))
        );
        assert_eq!(
            FinitePoset::validate(&[vec![true, true], vec![true]]),
            Err(PosetError::NotSquare)
        );
        assert!(FinitePoset::from_cover_pairs(3, &[(0, 1), (1, 2)]).unwrap().leq(0, 2));
    }

    #[test]
    fn lsc_examples() {
        let s = FinitePoset::sierpinski();
        assert!(is_lsc(&vals(&[1, 2]), &s));
        assert_eq!(lsc_violation(&vals(&[2, 1]), &s), Some((0, 1)));
        let p = FinitePoset::chain(4);
        assert!(is_lsc(&vals(&[3, 3, 3, 3]), &p));
    }

    #[test]
    fn opens() {
        let s = FinitePoset::sierpinski();
        assert_eq!(
            s.all_opens(DEFAULT_OPEN_LIMIT).unwrap(),
            vec![OpenSet::empty(), OpenSet::from_elements(&[1]), OpenSet::from_elements(&[0, 1])]
        );
        assert_eq!(FinitePoset::antichain(2).all_opens(12).unwrap().len(), 4);
        assert_eq!(FinitePoset::antichain(7).all_opens(12).unwrap().len(), 128);
        assert!(matches!(
            FinitePoset::antichain(13).all_opens(12),
            Err(PosetError::TooLarge { .. })
        ));
    }

    #[test]
    fn steps() {
        let s = Arc::new(FinitePoset::sierpinski());
        let f = LscFun::step(s.clone(), ExtReal::from(2), OpenSet::from_elements(&[1])).unwrap();
        assert_eq!(f.values(), &vals(&[0, 2])[..]);
        assert_eq!(f.to_steps(), vec![(ExtReal::from(2), OpenSet::from_elements(&[1]))]);
        assert!(LscFun::zero(s.clone()).to_steps().is_empty());
        assert_eq!(
            LscFun::step(s, ExtReal::one(), OpenSet::from_elements(&[0])),
            Err(PosetError::NotUpSet)
        );
    }

    #[test]
    fn cone_operations() {
        let s = Arc::new(FinitePoset::sierpinski());
        let f = LscFun::new(s.clone(), vals(&[1, 2])).unwrap();
        let g = LscFun::new(s.clone(), vals(&[0, 1])).unwrap();
        assert_eq!(f.add(&g).unwrap().values(), &vals(&[1, 3])[..]);
        let inf = LscFun::constant(s.clone(), ExtReal::Infinity);
        assert_eq!(inf.scale(&ExtReal::zero()).values(), &vals(&[0, 0])[..]);
        let h = LscFun::new(s.clone(), vals(&[1, 1])).unwrap();
        assert_eq!(LscFun::sup(&s, &[g.clone(), h]).unwrap().values(), &vals(&[1, 1])[..]);
        let other = Arc::new(FinitePoset::antichain(2));
        let k = LscFun::zero(other);
        assert_eq!(f.add(&k), Err(PosetError::PosetMismatch));
        assert_eq!(LscFun::new(s, vals(&[2, 1])), Err(PosetError::NotLsc(0, 1)));
    }

    #[test]
    fn poset_counts() {
        // 1, 2, 5, 16, 63, 318 unlabeled posets
        let counts: Vec<usize> = (1..=5).map(|n| posets_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
        assert!(posets_up_to_iso(4).iter().all(FinitePoset::is_naturally_labeled));
    }
}
