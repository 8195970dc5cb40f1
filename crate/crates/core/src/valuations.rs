//! Simple valuations on finite spaces, valuations on the open-set lattice,
//! and recovery of the representing function of a linear functional on the
//! valuation cone.
//!
//! Over a finite space a valuation is a weight vector `r`, acting on
//! lower semicontinuous functions by `mu(f) = sum_x r_x f(x)`. A linear
//! functional on the valuation cone is likewise a coefficient vector `c`
//! with `phi(mu) = sum_x r_x c_x`, and it is lower semicontinuous for the
//! weak* upper topology iff `c` is monotone, in which case `phi(mu) = mu(c)`.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::extreal::{ExtReal, ExtRealError};
use crate::finspace::{FinitePoset, LscFun, OpenSet, PosetError};
use crate::sample::{self, SampleRng};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("valuation and function live on different posets")]
    PosetMismatch,
    #[error("weight table has {found} entries, poset has {expected} elements")]
    WrongLength { expected: usize, found: usize },
    #[error(transparent)]
    UndefinedDifference(ExtRealError),
    #[error("not a valuation: {0}")]
    NotAValuation(String),
    #[error("functional is not lower semicontinuous: c[{0}] > c[{1}] although {0} <= {1}")]
    NotLsc(usize, usize),
    #[error("grid of {0} candidate functions is too large")]
    GridTooLarge(u128),
    #[error("empty family")]
    EmptyFamily,
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// `sum_x r_x delta_x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleValuation {
    poset: Arc<FinitePoset>,
    weights: Vec<ExtReal>,
}

impl SimpleValuation {
    pub fn new(poset: Arc<FinitePoset>, weights: Vec<ExtReal>) -> Result<Self, ValuationError> {
        if weights.len() != poset.size() {
            return Err(ValuationError::WrongLength {
                expected: poset.size(),
                found: weights.len(),
            });
        }
        Ok(SimpleValuation { poset, weights })
    }

    pub fn zero(poset: Arc<FinitePoset>) -> Self {
        let weights = vec![ExtReal::zero(); poset.size()];
        SimpleValuation { poset, weights }
    }

    pub fn dirac(poset: Arc<FinitePoset>, x: usize) -> Self {
        let mut v = Self::zero(poset);
        v.weights[x] = ExtReal::one();
        v
    }

    pub fn poset(&self) -> &Arc<FinitePoset> {
        &self.poset
    }

    pub fn weights(&self) -> &[ExtReal] {
        &self.weights
    }

    /// `mu(f) = sum_x r_x f(x)`.
    pub fn eval(&self, f: &LscFun) -> Result<ExtReal, ValuationError> {
        if !same(&self.poset, f.poset()) {
            return Err(ValuationError::PosetMismatch);
        }
        Ok(self.weights.iter().zip(f.values()).map(|(r, v)| r * v).sum())
    }

    /// `mu(chi_U)`.
    pub fn measure(&self, set: OpenSet) -> ExtReal {
        set.elements()
            .into_iter()
            .filter(|&x| x < self.weights.len())
            .map(|x| &self.weights[x])
            .sum()
    }

    pub fn to_opens(&self, limit: usize) -> Result<ValuationOnOpens, ValuationError> {
        let table = self
            .poset
            .all_opens(limit)?
            .into_iter()
            .map(|u| (u, self.measure(u)))
            .collect();
        Ok(ValuationOnOpens {
            poset: self.poset.clone(),
            table,
        })
    }
}

fn same(a: &Arc<FinitePoset>, b: &Arc<FinitePoset>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A set function on the open sets of a finite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationOnOpens {
    poset: Arc<FinitePoset>,
    table: BTreeMap<OpenSet, ExtReal>,
}

impl ValuationOnOpens {
    /// The empty set may be omitted; it is taken to have value zero.
    pub fn new(
        poset: Arc<FinitePoset>,
        table: BTreeMap<OpenSet, ExtReal>,
    ) -> Result<Self, ValuationError> {
        for u in table.keys() {
            if !poset.is_up_set(*u) {
                return Err(ValuationError::NotAValuation(format!("{u} is not open")));
            }
        }
        Ok(ValuationOnOpens { poset, table })
    }

    pub fn poset(&self) -> &Arc<FinitePoset> {
        &self.poset
    }

    pub fn table(&self) -> &BTreeMap<OpenSet, ExtReal> {
        &self.table
    }

    pub fn get(&self, set: OpenSet) -> Option<ExtReal> {
        if set.is_empty() {
            return Some(self.table.get(&set).cloned().unwrap_or_else(ExtReal::zero));
        }
        self.table.get(&set).cloned()
    }

    fn require(&self, set: OpenSet) -> Result<ExtReal, ValuationError> {
        self.get(set)
            .ok_or_else(|| ValuationError::NotAValuation(format!("no value for open set {set}")))
    }

    /// Strictness, monotonicity and modularity (where all four values are
    /// finite) over the listed opens.
    pub fn check_laws(&self) -> Result<(), String> {
        if let Some(v) = self.get(OpenSet::empty()) {
            if !v.is_zero() {
                return Err("value of the empty set is not zero".into());
            }
        }
        let entries: Vec<(OpenSet, &ExtReal)> = self.table.iter().map(|(k, v)| (*k, v)).collect();
        for &(u, vu) in &entries {
            for &(w, vw) in &entries {
                if u.intersection(&w) == u && vu > vw {
                    return Err(format!("not monotone: {u} inside {w}"));
                }
                let (Some(cup), Some(cap)) = (self.get(u.union(&w)), self.get(u.intersection(&w)))
                else {
                    continue;
                };
                if [vu, vw, &cup, &cap].iter().all(|v| v.is_finite()) && vu + vw != &cup + &cap {
                    return Err(format!("not modular at {u}, {w}"));
                }
            }
        }
        Ok(())
    }

    /// Moebius inversion `r_x = nu(up x) - nu(up x \ {x})`, followed by a
    /// round-trip check against every listed open.
    pub fn from_opens(&self) -> Result<SimpleValuation, ValuationError> {
        let n = self.poset.size();
        let mut weights = Vec::with_capacity(n);
        for x in 0..n {
            let up = self.poset.up_of(x);
            let above = up.without(x);
            let whole = self.require(up)?;
            let rest = self.require(above)?;
            if rest.is_infinite() {
                return Err(ValuationError::UndefinedDifference(
                    ExtRealError::UndefinedDifference {
                        minuend: Box::new(whole),
                        subtrahend: Box::new(rest),
                    },
                ));
            }
            let r = whole.sub_partial(&rest).map_err(|_| {
                ValuationError::NotAValuation(format!(
                    "negative weight at {x}: {whole} < {rest}"
                ))
            })?;
            weights.push(r);
        }
        let mu = SimpleValuation {
            poset: self.poset.clone(),
            weights,
        };
        for (u, v) in &self.table {
            if mu.measure(*u) != *v {
                return Err(ValuationError::NotAValuation(format!(
                    "value {v} at {u} is not induced by point weights"
                )));
            }
        }
        Ok(mu)
    }
}

/// A linear functional `phi(mu) = sum_x r_x c_x` on simple valuations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualFunctionalRep {
    pub coeffs: Vec<ExtReal>,
}

impl DualFunctionalRep {
    pub fn new(coeffs: Vec<ExtReal>) -> Self {
        DualFunctionalRep { coeffs }
    }

    pub fn apply(&self, mu: &SimpleValuation) -> Result<ExtReal, ValuationError> {
        if self.coeffs.len() != mu.weights.len() {
            return Err(ValuationError::WrongLength {
                expected: mu.weights.len(),
                found: self.coeffs.len(),
            });
        }
        Ok(mu.weights.iter().zip(&self.coeffs).map(|(r, c)| r * c).sum())
    }
}

/// Subbasic weak* upper open `{ mu : mu(f) > 1 }`.
pub fn weakstar_member(mu: &SimpleValuation, f: &LscFun) -> Result<bool, ValuationError> {
    Ok(mu.eval(f)? > ExtReal::one())
}

/// Recovers `f` with `phi(mu) = mu(f)` for all `mu`: `f(x) = phi(delta_x)`.
/// Fails with the violating pair when that function is not monotone.
pub fn ss_recover(
    phi: &DualFunctionalRep,
    poset: &Arc<FinitePoset>,
) -> Result<LscFun, ValuationError> {
    if phi.coeffs.len() != poset.size() {
        return Err(ValuationError::WrongLength {
            expected: poset.size(),
            found: phi.coeffs.len(),
        });
    }
    let values: Vec<ExtReal> = (0..poset.size())
        .map(|x| phi.apply(&SimpleValuation::dirac(poset.clone(), x)))
        .collect::<Result<_, _>>()?;
    LscFun::new(poset.clone(), values).map_err(|e| match e {
        PosetError::NotLsc(x, y) => ValuationError::NotLsc(x, y),
        other => other.into(),
    })
}

/// A seeded random simple valuation; weights are zero, small rationals, or
/// (with probability `p_inf`) infinite.
pub fn random_valuation(rng: &mut SampleRng, poset: &Arc<FinitePoset>, p_inf: f64) -> SimpleValuation {
    let weights = (0..poset.size())
        .map(|_| {
            if rng.gen_bool(0.2) {
                ExtReal::zero()
            } else {
                sample::ext_real(rng, 6, 4, p_inf)
            }
        })
        .collect();
    SimpleValuation {
        poset: poset.clone(),
        weights,
    }
}

/// Dirac valuations followed by `extra` seeded random ones.
pub fn test_valuations(poset: &Arc<FinitePoset>, extra: usize, seed: u64) -> Vec<SimpleValuation> {
    let mut rng = sample::rng(seed);
    (0..poset.size())
        .map(|x| SimpleValuation::dirac(poset.clone(), x))
        .chain((0..extra).map(|_| random_valuation(&mut rng, poset, 0.1)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectednessReport {
    pub directed: bool,
    pub candidates: usize,
    pub admissible: usize,
    /// A pair in the admissible set without an upper bound there.
    pub counterexample: Option<(Vec<ExtReal>, Vec<ExtReal>)>,
}

/// Upper bound on the candidate grid size.
pub const MAX_GRID: u128 = 1_000_000;

/// On the grid of monotone functions with values in `{0, 1/d, ..., cap}`,
/// computes `S = { f : mu(f) <= phi(mu) }` over Dirac and `samples` random
/// valuations, then checks that every pair in `S` has an upper bound in `S`.
pub fn lemma1_directedness_check(
    phi: &DualFunctionalRep,
    poset: &Arc<FinitePoset>,
    grid_denominator: u64,
    cap: &ExtReal,
    samples: usize,
    seed: u64,
) -> Result<DirectednessReport, ValuationError> {
    let n = poset.size();
    let cap_q = cap.as_rational().ok_or(ValuationError::GridTooLarge(u128::MAX))?;
    if grid_denominator == 0 {
        return Err(ValuationError::GridTooLarge(u128::MAX));
    }
    // values k/d for k = 0..=floor(cap * d)
    let top = (cap_q * num_rational::BigRational::from_integer(grid_denominator.into())).floor();
    let top: u64 = top
        .to_integer()
        .try_into()
        .map_err(|_| ValuationError::GridTooLarge(u128::MAX))?;
    let levels = u128::from(top) + 1;
    let total = levels.checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > MAX_GRID {
        return Err(ValuationError::GridTooLarge(total));
    }
    let grid: Vec<ExtReal> = (0..=top).map(|k| ExtReal::ratio(k, grid_denominator)).collect();

    let mut candidates = Vec::new();
    let mut idx = vec![0usize; n];
    'outer: loop {
        let values: Vec<ExtReal> = idx.iter().map(|&k| grid[k].clone()).collect();
        if let Ok(f) = LscFun::new(poset.clone(), values) {
            candidates.push(f);
        }
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < grid.len() {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }

    let mus = test_valuations(poset, samples, seed);
    let bounds: Vec<ExtReal> = mus.iter().map(|mu| phi.apply(mu)).collect::<Result<_, _>>()?;
    let admissible: Vec<&LscFun> = candidates
        .iter()
        .filter(|f| {
            mus.iter()
                .zip(&bounds)
                .all(|(mu, b)| mu.eval(f).is_ok_and(|v| v <= *b))
        })
        .collect();
    let members: HashSet<&[ExtReal]> = admissible.iter().map(|f| f.values()).collect();

    for (i, f) in admissible.iter().enumerate() {
        for g in &admissible[i + 1..] {
            let join = f.join(g)?;
            let bounded = members.contains(join.values())
                || admissible.iter().any(|h| f.leq(h) && g.leq(h));
            if !bounded {
                return Ok(DirectednessReport {
                    directed: false,
                    candidates: candidates.len(),
                    admissible: admissible.len(),
                    counterexample: Some((f.values().to_vec(), g.values().to_vec())),
                });
            }
        }
    }
    Ok(DirectednessReport {
        directed: true,
        candidates: candidates.len(),
        admissible: admissible.len(),
        counterexample: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupReport {
    /// `sup_i mu(f_i) <= phi(mu)` on every sample.
    pub bounded: bool,
    /// Equality on every sample.
    pub attained: bool,
    pub samples: usize,
}

impl SupReport {
    pub fn holds(&self) -> bool {
        self.bounded && self.attained
    }
}

/// Compares `sup_i mu(f_i)` with `phi(mu)` on Dirac and random valuations.
pub fn lemma2_sup_check(
    phi: &DualFunctionalRep,
    poset: &Arc<FinitePoset>,
    family: &[LscFun],
    samples: usize,
    seed: u64,
) -> Result<SupReport, ValuationError> {
    if family.is_empty() {
        return Err(ValuationError::EmptyFamily);
    }
    let mus = test_valuations(poset, samples, seed);
    let mut bounded = true;
    let mut attained = true;
    for mu in &mus {
        let vals: Vec<ExtReal> = family.iter().map(|f| mu.eval(f)).collect::<Result<_, _>>()?;
        let sup = ExtReal::sup_of(&vals).expect("nonempty family");
        let target = phi.apply(mu)?;
        bounded &= sup <= target;
        attained &= sup == target;
    }
    Ok(SupReport {
        bounded,
        attained,
        samples: mus.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vals(xs: &[u64]) -> Vec<ExtReal> {
        xs.iter().map(|&x| ExtReal::from(x)).collect()
    }

    fn sierp() -> Arc<FinitePoset> {
        Arc::new(FinitePoset::sierpinski())
    }

    #[test]
    fn evaluation() {
        let s = sierp();
        let f = LscFun::new(s.clone(), vals(&[1, 2])).unwrap();
        assert_eq!(SimpleValuation::dirac(s.clone(), 1).eval(&f).unwrap(), ExtReal::from(2));
        let mu = SimpleValuation::new(s.clone(), vals(&[3, 2])).unwrap();
        assert_eq!(mu.eval(&f).unwrap(), ExtReal::from(7));
        let g = LscFun::new(s.clone(), vals(&[0, 1])).unwrap();
        let mu_inf = SimpleValuation::new(s.clone(), vec![ExtReal::Infinity, ExtReal::zero()]).unwrap();
        assert_eq!(mu_inf.eval(&g).unwrap(), ExtReal::zero());
        let other = LscFun::zero(Arc::new(FinitePoset::antichain(2)));
        assert_eq!(mu.eval(&other), Err(ValuationError::PosetMismatch));
    }

    #[test]
    fn moebius_examples() {
        let s = sierp();
        let mut table = BTreeMap::new();
        table.insert(OpenSet::from_elements(&[1]), ExtReal::from(2));
        table.insert(OpenSet::from_elements(&[0, 1]), ExtReal::from(5));
        let nu = ValuationOnOpens::new(s.clone(), table).unwrap();
        assert_eq!(nu.from_opens().unwrap().weights(), &vals(&[3, 2])[..]);

        let d = SimpleValuation::dirac(s.clone(), 1);
        let opens = d.to_opens(12).unwrap();
        for (u, v) in opens.table() {
            let expected = if u.contains(1) { ExtReal::one() } else { ExtReal::zero() };
            assert_eq!(*v, expected);
        }

        let mut table = BTreeMap::new();
        table.insert(OpenSet::from_elements(&[1]), ExtReal::Infinity);
        table.insert(OpenSet::from_elements(&[0, 1]), ExtReal::Infinity);
        let nu = ValuationOnOpens::new(s.clone(), table).unwrap();
        assert!(matches!(nu.from_opens(), Err(ValuationError::UndefinedDifference(_))));

        let mut table = BTreeMap::new();
        table.insert(OpenSet::from_elements(&[1]), ExtReal::from(5));
        table.insert(OpenSet::from_elements(&[0, 1]), ExtReal::from(2));
        let nu = ValuationOnOpens::new(s, table).unwrap();
        assert!(matches!(nu.from_opens(), Err(ValuationError::NotAValuation(_))));
    }

    #[test]
    fn non_modular_table_is_rejected() {
        let p = Arc::new(FinitePoset::antichain(2));
        let mut table = BTreeMap::new();
        table.insert(OpenSet::from_elements(&[0]), ExtReal::from(1));
        table.insert(OpenSet::from_elements(&[1]), ExtReal::from(1));
        table.insert(OpenSet::from_elements(&[0, 1]), ExtReal::from(3));
        let nu = ValuationOnOpens::new(p, table).unwrap();
        assert!(nu.check_laws().is_err());
        assert!(matches!(nu.from_opens(), Err(ValuationError::NotAValuation(_))));
    }

    #[test]
    fn weakstar_examples() {
        let s = sierp();
        let f = LscFun::new(s.clone(), vals(&[0, 2])).unwrap();
        assert!(weakstar_member(&SimpleValuation::dirac(s.clone(), 1), &f).unwrap());
        assert!(!weakstar_member(&SimpleValuation::dirac(s.clone(), 0), &f).unwrap());
        assert!(!weakstar_member(&SimpleValuation::zero(s), &f).unwrap());
    }

    #[test]
    fn recovery_examples() {
        let s = sierp();
        let phi = DualFunctionalRep::new(vals(&[1, 2]));
        let f = ss_recover(&phi, &s).unwrap();
        assert_eq!(f.values(), &vals(&[1, 2])[..]);
        let mu = SimpleValuation::new(s.clone(), vals(&[3, 2])).unwrap();
        assert_eq!(phi.apply(&mu).unwrap(), ExtReal::from(7));
        assert_eq!(mu.eval(&f).unwrap(), ExtReal::from(7));

        assert_eq!(
            ss_recover(&DualFunctionalRep::new(vals(&[2, 1])), &s),
            Err(ValuationError::NotLsc(0, 1))
        );
        let zero = ss_recover(&DualFunctionalRep::new(vals(&[0, 0])), &s).unwrap();
        assert_eq!(zero.values(), &vals(&[0, 0])[..]);
    }

    #[test]
    fn directedness_examples() {
        let s = sierp();
        let phi = DualFunctionalRep::new(vals(&[1, 2]));
        let r = lemma1_directedness_check(&phi, &s, 1, &ExtReal::from(2), 200, 1).unwrap();
        assert!(r.directed);
        // monotone grid functions below (1, 2): (0,0) (0,1) (0,2) (1,1) (1,2)
        assert_eq!(r.admissible, 5);
        assert_eq!(r.candidates, 6);

        let single = Arc::new(FinitePoset::chain(1));
        let r = lemma1_directedness_check(&DualFunctionalRep::new(vals(&[3])), &single, 2, &ExtReal::from(2), 50, 1)
            .unwrap();
        assert!(r.directed);

        let r = lemma1_directedness_check(&DualFunctionalRep::new(vals(&[2, 1])), &s, 1, &ExtReal::from(2), 200, 1)
            .unwrap();
        assert!(r.directed);

        assert!(matches!(
            lemma1_directedness_check(&phi, &s, 1, &ExtReal::Infinity, 10, 1),
            Err(ValuationError::GridTooLarge(_))
        ));
    }

    #[test]
    fn sup_examples() {
        let s = sierp();
        let phi = DualFunctionalRep::new(vals(&[1, 2]));
        let f = ss_recover(&phi, &s).unwrap();
        assert!(lemma2_sup_check(&phi, &s, std::slice::from_ref(&f), 200, 3).unwrap().holds());
        assert!(lemma2_sup_check(&phi, &s, &f.step_chain(), 200, 3).unwrap().holds());
        let zero = LscFun::zero(s.clone());
        let r = lemma2_sup_check(&phi, &s, &[zero], 200, 3).unwrap();
        assert!(r.bounded && !r.attained);
    }
}
