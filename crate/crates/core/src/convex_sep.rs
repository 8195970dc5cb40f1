//! Separation of finitely generated convex sets in the extended orthant
//! from the open corner `V = { y : y_i > 1 for all i }`.
//!
//! Given generators `p_1, ..., p_m`, [`separate`] either finds simplex
//! weights `a` with `sum_i a_i p_i <= 1` for every generator (so the hull
//! lies on one side of the hyperplane and `V` strictly on the other), or an
//! explicit convex combination of generators that lies in `V`.

use std::fmt;
use std::ops::Index;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extreal::ExtReal;
use crate::lp::{solve_lp, Constraint, LpError, LpProblem, LpResult, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SepError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no generators")]
    NoGenerators,
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// A point of the extended orthant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExtVec(pub Vec<ExtReal>);

impl ExtVec {
    pub fn new(entries: Vec<ExtReal>) -> Self {
        ExtVec(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        ExtVec(vec![ExtReal::zero(); dim])
    }

    pub fn from_ratios(entries: &[(u64, u64)]) -> Self {
        ExtVec(entries.iter().map(|&(n, d)| ExtReal::ratio(n, d)).collect())
    }

    pub fn from_integers(entries: &[u64]) -> Self {
        ExtVec(entries.iter().map(|&n| ExtReal::from(n)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[ExtReal] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExtReal> {
        self.0.iter()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(ExtReal::is_finite)
    }

    /// Extended-real inner product; `0 * inf = 0`.
    pub fn dot(&self, other: &ExtVec) -> ExtReal {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, r: &ExtReal) -> ExtVec {
        ExtVec(self.0.iter().map(|x| r * x).collect())
    }

    pub fn add(&self, other: &ExtVec) -> ExtVec {
        ExtVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Coordinatewise order.
    pub fn leq(&self, other: &ExtVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<(), SepError> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(SepError::DimensionMismatch {
                expected,
                found: self.dim(),
            })
        }
    }
}

impl Index<usize> for ExtVec {
    type Output = ExtReal;
    fn index(&self, i: usize) -> &ExtReal {
        &self.0[i]
    }
}

impl fmt::Display for ExtVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl From<Vec<ExtReal>> for ExtVec {
    fn from(v: Vec<ExtReal>) -> Self {
        ExtVec(v)
    }
}

/// Nonnegative rational weights summing to exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeparationWeights(Vec<BigRational>);

impl SeparationWeights {
    /// Validates the simplex invariant. Returns `None` if some weight is
    /// negative or the weights do not sum to one.
    pub fn new(weights: Vec<BigRational>) -> Option<Self> {
        let sum = weights.iter().fold(BigRational::zero(), |acc, w| acc + w);
        if weights.iter().any(Signed::is_negative) || !sum.is_one() {
            None
        } else {
            Some(SeparationWeights(weights))
        }
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_ext(&self) -> ExtVec {
        ExtVec(self.0.iter().cloned().map(ExtReal::Finite).collect())
    }

    /// `sum_i a_i x_i` with extended arithmetic.
    pub fn apply(&self, x: &ExtVec) -> ExtReal {
        self.to_ext().dot(x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationOutcome {
    Separated(SeparationWeights),
    /// `(generator index, coefficient)` pairs of a convex combination in `V`.
    MeetsV(Vec<(usize, BigRational)>),
}

impl SeparationOutcome {
    pub fn is_separated(&self) -> bool {
        matches!(self, SeparationOutcome::Separated(_))
    }
}

/// Every coordinate strictly above one.
pub fn in_v(x: &ExtVec) -> bool {
    let one = ExtReal::one();
    x.iter().all(|xi| *xi > one)
}

/// The convex combination described by `witness`.
pub fn combination(generators: &[ExtVec], witness: &[(usize, BigRational)], dim: usize) -> ExtVec {
    witness.iter().fold(ExtVec::zeros(dim), |acc, (idx, c)| {
        acc.add(&generators[*idx].scale(&ExtReal::Finite(c.clone())))
    })
}

fn check_generators(generators: &[ExtVec], dim: usize) -> Result<(), SepError> {
    if generators.is_empty() {
        return Err(SepError::NoGenerators);
    }
    generators.iter().try_for_each(|g| g.check_dim(dim))
}

/// Separates the convex hull of `generators` from `V`, or exhibits a hull
/// point inside `V`.
pub fn separate(generators: &[ExtVec], dim: usize) -> Result<SeparationOutcome, SepError> {
    check_generators(generators, dim)?;

    // A coordinate where some generator is infinite must get weight zero.
    let live: Vec<usize> = (0..dim)
        .filter(|&i| generators.iter().all(|g| g[i].is_finite()))
        .collect();

    let infinite_cover = |coords: &mut dyn Iterator<Item = usize>| -> Vec<usize> {
        let mut picked: Vec<usize> = coords
            .map(|i| {
                generators
                    .iter()
                    .position(|g| g[i].is_infinite())
                    .expect("coordinate carries an infinite generator")
            })
            .collect();
        picked.sort_unstable();
        picked.dedup();
        picked
    };

    if live.is_empty() {
        let picked = infinite_cover(&mut (0..dim));
        let w = BigRational::new(1.into(), (picked.len() as i64).into());
        let witness = picked.into_iter().map(|i| (i, w.clone())).collect();
        return Ok(SeparationOutcome::MeetsV(witness));
    }

    let k = live.len();
    let mut constraints = vec![Constraint::new(
        vec![BigRational::one(); k],
        Relation::Eq,
        BigRational::one(),
    )];
    for g in generators {
        let coeffs = live
            .iter()
            .map(|&i| g[i].as_rational().cloned().expect("live coordinate is finite"))
            .collect();
        constraints.push(Constraint::new(coeffs, Relation::Le, BigRational::one()));
    }
    let problem = LpProblem::feasibility(k, constraints);

    match solve_lp(&problem)? {
        LpResult::Optimal { point, .. } => {
            let mut a = vec![BigRational::zero(); dim];
            for (&i, v) in live.iter().zip(point) {
                a[i] = v;
            }
            let weights = SeparationWeights::new(a).expect("LP enforces the simplex");
            Ok(SeparationOutcome::Separated(weights))
        }
        LpResult::Infeasible { farkas } => {
            Ok(SeparationOutcome::MeetsV(witness_from_farkas(generators, &live, dim, &farkas)))
        }
        LpResult::Unbounded { .. } => unreachable!("feasibility problem has zero objective"),
    }
}

/// Turns a refutation `(u_0, u_1..u_m)` of the live-coordinate LP into a
/// hull point in `V`.
///
/// With `S = sum u_p > 0` and `m = -u_0 / S > 1`, the combination
/// `lambda_p = u_p / S` has every live coordinate at least `m`. Coordinates
/// removed because of an infinite generator are covered by mixing in those
/// generators with total weight `eps = (1 - 1/m) / 2`, which keeps the live
/// coordinates at least `(m + 1) / 2 > 1`.
fn witness_from_farkas(
    generators: &[ExtVec],
    live: &[usize],
    dim: usize,
    farkas: &[BigRational],
) -> Vec<(usize, BigRational)> {
    let u0 = &farkas[0];
    let total = farkas[1..].iter().fold(BigRational::zero(), |acc, u| acc + u);
    debug_assert!(total.is_positive() && (u0 + &total).is_negative());

    let mut coeffs: Vec<BigRational> = farkas[1..].iter().map(|u| u / &total).collect();

    let dead: Vec<usize> = (0..dim).filter(|i| !live.contains(i)).collect();
    if !dead.is_empty() {
        let margin = -u0 / &total;
        let eps = (BigRational::one() - margin.recip()) / BigRational::from_integer(2.into());
        let mut cover: Vec<usize> = dead
            .iter()
            .map(|&i| generators.iter().position(|g| g[i].is_infinite()).unwrap())
            .collect();
        cover.sort_unstable();
        cover.dedup();
        let share = &eps / BigRational::from_integer((cover.len() as i64).into());
        let keep = BigRational::one() - &eps;
        for c in coeffs.iter_mut() {
            *c = &*c * &keep;
        }
        for idx in cover {
            coeffs[idx] += &share;
        }
    }

    coeffs
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Decision form of [`separate`].
pub fn hull_disjoint_from_v(generators: &[ExtVec], dim: usize) -> Result<bool, SepError> {
    Ok(separate(generators, dim)?.is_separated())
}

/// Rechecks an outcome against the generators without consulting the solver.
pub fn verify_outcome(generators: &[ExtVec], dim: usize, outcome: &SeparationOutcome) -> bool {
    match outcome {
        SeparationOutcome::Separated(a) => {
            let one = ExtReal::one();
            a.len() == dim && generators.iter().all(|g| a.apply(g) <= one)
        }
        SeparationOutcome::MeetsV(witness) => {
            let sum = witness.iter().fold(BigRational::zero(), |acc, (_, c)| acc + c);
            witness.iter().all(|(i, c)| *i < generators.len() && !c.is_negative())
                && sum.is_one()
                && in_v(&combination(generators, witness, dim))
        }
    }
}
