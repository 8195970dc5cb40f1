//! Linear, sublinear and superlinear functionals on the extended orthant,
//! the open sets they cut out, and Minkowski functionals of finitely
//! presented weak-upper opens.
//!
//! A linear functional is a coefficient vector `r`, evaluated as
//! `y -> sum_i r_i y_i`. Sublinear functionals are finite maxima of linear
//! ones and superlinear functionals finite minima.

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convex_sep::{ExtVec, SepError, SeparationWeights};
use crate::extreal::ExtReal;
use crate::interpolate::{check_min_below, MinBelow};
use crate::lp::{solve_lp, Constraint, LpError, LpProblem, LpResult, Relation};
use crate::sample;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctionalError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("functional has no branches")]
    NoBranches,
    #[error("infinite coefficient not supported here")]
    InfiniteCoefficient,
    #[error(transparent)]
    Lp(#[from] LpError),
}

impl From<SepError> for FunctionalError {
    fn from(e: SepError) -> Self {
        match e {
            SepError::DimensionMismatch { expected, found } => {
                FunctionalError::DimensionMismatch { expected, found }
            }
            SepError::NoGenerators => FunctionalError::NoBranches,
            SepError::Lp(e) => FunctionalError::Lp(e),
        }
    }
}

fn check_dim(expected: usize, found: usize) -> Result<(), FunctionalError> {
    if expected == found {
        Ok(())
    } else {
        Err(FunctionalError::DimensionMismatch { expected, found })
    }
}

/// `y -> <r, y>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinFun {
    pub coeffs: ExtVec,
}

impl LinFun {
    pub fn new(coeffs: ExtVec) -> Self {
        LinFun { coeffs }
    }

    pub fn from_integers(coeffs: &[u64]) -> Self {
        LinFun::new(ExtVec::from_integers(coeffs))
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    pub fn eval(&self, y: &ExtVec) -> Result<ExtReal, FunctionalError> {
        check_dim(self.dim(), y.dim())?;
        Ok(self.coeffs.dot(y))
    }

    pub(crate) fn eval_unchecked(&self, y: &ExtVec) -> ExtReal {
        self.coeffs.dot(y)
    }

    pub fn rational_coeffs(&self) -> Result<Vec<BigRational>, FunctionalError> {
        self.coeffs
            .iter()
            .map(|c| c.as_rational().cloned().ok_or(FunctionalError::InfiniteCoefficient))
            .collect()
    }

    /// `sum_i w_i f_i` over a list of functionals of equal dimension.
    pub fn combine(weights: &[BigRational], funs: &[LinFun]) -> LinFun {
        let dim = funs.first().map_or(0, LinFun::dim);
        let coeffs = weights.iter().zip(funs).fold(ExtVec::zeros(dim), |acc, (w, f)| {
            acc.add(&f.coeffs.scale(&ExtReal::Finite(w.clone())))
        });
        LinFun::new(coeffs)
    }
}

fn check_branches(branches: &[LinFun]) -> Result<usize, FunctionalError> {
    let first = branches.first().ok_or(FunctionalError::NoBranches)?;
    let dim = first.dim();
    for b in branches {
        check_dim(dim, b.dim())?;
    }
    Ok(dim)
}

/// Pointwise maximum of linear functionals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<LinFun>", into = "Vec<LinFun>")]
pub struct SublinFun {
    branches: Vec<LinFun>,
}

impl SublinFun {
    pub fn new(branches: Vec<LinFun>) -> Result<Self, FunctionalError> {
        check_branches(&branches)?;
        Ok(SublinFun { branches })
    }

    pub fn branches(&self) -> &[LinFun] {
        &self.branches
    }

    pub fn dim(&self) -> usize {
        self.branches[0].dim()
    }

    pub fn eval(&self, y: &ExtVec) -> Result<ExtReal, FunctionalError> {
        check_dim(self.dim(), y.dim())?;
        Ok(self.branches.iter().map(|b| b.eval_unchecked(y)).max().unwrap())
    }
}

/// Pointwise minimum of linear functionals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<LinFun>", into = "Vec<LinFun>")]
pub struct SuperlinFun {
    branches: Vec<LinFun>,
}

impl SuperlinFun {
    pub fn new(branches: Vec<LinFun>) -> Result<Self, FunctionalError> {
        check_branches(&branches)?;
        Ok(SuperlinFun { branches })
    }

    pub fn branches(&self) -> &[LinFun] {
        &self.branches
    }

    pub fn dim(&self) -> usize {
        self.branches[0].dim()
    }

    pub fn eval(&self, y: &ExtVec) -> Result<ExtReal, FunctionalError> {
        check_dim(self.dim(), y.dim())?;
        Ok(self.branches.iter().map(|b| b.eval_unchecked(y)).min().unwrap())
    }
}

macro_rules! branches_conversions {
    ($ty:ty) => {
        impl TryFrom<Vec<LinFun>> for $ty {
            type Error = FunctionalError;
            fn try_from(v: Vec<LinFun>) -> Result<Self, Self::Error> {
                <$ty>::new(v)
            }
        }

        impl From<$ty> for Vec<LinFun> {
            fn from(f: $ty) -> Self {
                f.branches
            }
        }
    };
}

branches_conversions!(SublinFun);
branches_conversions!(SuperlinFun);

/// Any of the three finite representations of a homogeneous functional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Functional {
    Lin { coeffs: LinFun },
    Max { branches: SublinFun },
    Min { branches: SuperlinFun },
}

impl Functional {
    pub fn lin(f: LinFun) -> Self {
        Functional::Lin { coeffs: f }
    }

    pub fn max(f: SublinFun) -> Self {
        Functional::Max { branches: f }
    }

    pub fn min(f: SuperlinFun) -> Self {
        Functional::Min { branches: f }
    }

    pub fn dim(&self) -> usize {
        match self {
            Functional::Lin { coeffs } => coeffs.dim(),
            Functional::Max { branches } => branches.dim(),
            Functional::Min { branches } => branches.dim(),
        }
    }

    pub fn eval(&self, y: &ExtVec) -> Result<ExtReal, FunctionalError> {
        match self {
            Functional::Lin { coeffs } => coeffs.eval(y),
            Functional::Max { branches } => branches.eval(y),
            Functional::Min { branches } => branches.eval(y),
        }
    }

    fn branches(&self) -> Vec<&LinFun> {
        match self {
            Functional::Lin { coeffs } => vec![coeffs],
            Functional::Max { branches } => branches.branches().iter().collect(),
            Functional::Min { branches } => branches.branches().iter().collect(),
        }
    }

    fn has_finite_coeffs(&self) -> bool {
        self.branches().iter().all(|b| b.coeffs.is_finite())
    }
}

/// `phi(y) > 1`.
pub fn member_u(phi: &Functional, y: &ExtVec) -> Result<bool, FunctionalError> {
    Ok(phi.eval(y)? > ExtReal::one())
}

/// `phi(y) <= 1`.
pub fn member_a(phi: &Functional, y: &ExtVec) -> Result<bool, FunctionalError> {
    Ok(phi.eval(y)? <= ExtReal::one())
}

/// A union of basic opens `U_F = { y : <x, y> > 1 for all x in F }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenSetRep {
    pub blocks: Vec<Vec<LinFun>>,
}

impl OpenSetRep {
    pub fn new(blocks: Vec<Vec<LinFun>>) -> Result<Self, FunctionalError> {
        let mut dim = None;
        for block in &blocks {
            let d = check_branches(block)?;
            match dim {
                None => dim = Some(d),
                Some(expected) => check_dim(expected, d)?,
            }
        }
        Ok(OpenSetRep { blocks })
    }

    pub fn basic(block: Vec<LinFun>) -> Result<Self, FunctionalError> {
        OpenSetRep::new(vec![block])
    }

    pub fn dim(&self) -> Option<usize> {
        self.blocks.first().map(|b| b[0].dim())
    }

    fn check(&self, y: &ExtVec) -> Result<(), FunctionalError> {
        match self.dim() {
            Some(d) => check_dim(d, y.dim()),
            None => Ok(()),
        }
    }

    pub fn contains(&self, y: &ExtVec) -> Result<bool, FunctionalError> {
        self.check(y)?;
        let one = ExtReal::one();
        Ok(self
            .blocks
            .iter()
            .any(|block| block.iter().all(|x| x.eval_unchecked(y) > one)))
    }

    /// Membership of `y` in `r * U`, i.e. `<x, y> > r` for all `x` of some block.
    pub fn contains_scaled(&self, r: &ExtReal, y: &ExtVec) -> Result<bool, FunctionalError> {
        self.check(y)?;
        Ok(self
            .blocks
            .iter()
            .any(|block| block.iter().all(|x| x.eval_unchecked(y) > *r)))
    }
}

/// Minkowski functional `sup { r > 0 : y in r U }` of a union of basic opens:
/// the maximum over blocks of the minimum pairing.
pub fn minkowski(open: &OpenSetRep, y: &ExtVec) -> Result<ExtReal, FunctionalError> {
    open.check(y)?;
    Ok(open
        .blocks
        .iter()
        .map(|block| block.iter().map(|x| x.eval_unchecked(y)).min().unwrap())
        .max()
        .unwrap_or_else(ExtReal::zero))
}

/// Decides `f <= max_k h_k` on the orthant. This holds exactly when
/// `f <= sum_k lambda_k h_k` coordinatewise for some simplex weights
/// `lambda`, which are returned as the certificate.
pub fn dominated_by_max(
    f: &LinFun,
    phi: &SublinFun,
) -> Result<Option<SeparationWeights>, FunctionalError> {
    check_dim(phi.dim(), f.dim())?;
    let target = f.rational_coeffs()?;
    let branches = phi
        .branches()
        .iter()
        .map(LinFun::rational_coeffs)
        .collect::<Result<Vec<_>, _>>()?;
    let k = branches.len();

    let mut constraints = vec![Constraint::new(
        vec![BigRational::one(); k],
        Relation::Eq,
        BigRational::one(),
    )];
    for (j, t) in target.iter().enumerate() {
        let coeffs = branches.iter().map(|h| h[j].clone()).collect();
        constraints.push(Constraint::new(coeffs, Relation::Ge, t.clone()));
    }
    match solve_lp(&LpProblem::feasibility(k, constraints))? {
        LpResult::Optimal { point, .. } => Ok(Some(
            SeparationWeights::new(point).expect("LP enforces the simplex"),
        )),
        LpResult::Infeasible { .. } => Ok(None),
        LpResult::Unbounded { .. } => unreachable!("zero objective"),
    }
}

/// Specialization order of the weak upper topology generated by `gens`:
/// `<x, y> <= <x, y'>` for every generator `x`.
pub fn spec_leq(y: &ExtVec, y2: &ExtVec, gens: &[LinFun]) -> Result<bool, FunctionalError> {
    check_dim(y.dim(), y2.dim())?;
    for x in gens {
        check_dim(x.dim(), y.dim())?;
    }
    Ok(gens.iter().all(|x| x.eval_unchecked(y) <= x.eval_unchecked(y2)))
}

/// Outcome of comparing two functionals pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    /// Decided exactly: the inequality holds everywhere.
    Holds,
    /// Sampled search found no violation; not a proof.
    NotRefuted { samples: usize },
    /// A point where the left side exceeds the right side.
    Violated { witness: ExtVec },
}

impl Comparison {
    pub fn as_bool(&self) -> bool {
        !matches!(self, Comparison::Violated { .. })
    }
}

/// Compares `phi <= psi` pointwise on the orthant.
///
/// With finite coefficients the answer is exact. The right side is split
/// into maxima (`min_i psi_i` is above `phi` iff each `psi_i` is), and each
/// comparison against a maximum goes through [`dominated_by_max`] or
/// [`check_min_below`]. With infinite coefficients this falls back to a
/// seeded search over at most `sample_budget` points.
pub fn leq_functional(
    phi: &Functional,
    psi: &Functional,
    sample_budget: usize,
) -> Result<Comparison, FunctionalError> {
    leq_functional_seeded(phi, psi, sample_budget, sample::DEFAULT_SEED)
}

/// [`leq_functional`] with an explicit seed for the sampled fallback.
pub fn leq_functional_seeded(
    phi: &Functional,
    psi: &Functional,
    sample_budget: usize,
    seed: u64,
) -> Result<Comparison, FunctionalError> {
    check_dim(phi.dim(), psi.dim())?;
    if !(phi.has_finite_coeffs() && psi.has_finite_coeffs()) {
        return Ok(sampled_leq(phi, psi, sample_budget, seed));
    }

    let uppers: Vec<SublinFun> = match psi {
        Functional::Lin { coeffs } => vec![SublinFun::new(vec![coeffs.clone()])?],
        Functional::Max { branches } => vec![branches.clone()],
        Functional::Min { branches } => branches
            .branches()
            .iter()
            .map(|b| SublinFun::new(vec![b.clone()]))
            .collect::<Result<_, _>>()?,
    };

    for upper in &uppers {
        match phi {
            Functional::Lin { coeffs } => {
                if let Some(w) = below_via_domination(coeffs, upper)? {
                    return Ok(Comparison::Violated { witness: w });
                }
            }
            Functional::Max { branches } => {
                for b in branches.branches() {
                    if let Some(w) = below_via_domination(b, upper)? {
                        return Ok(Comparison::Violated { witness: w });
                    }
                }
            }
            Functional::Min { branches } => {
                if let MinBelow::Violated { witness, .. } = check_min_below(branches, upper)? {
                    return Ok(Comparison::Violated { witness });
                }
            }
        }
    }
    Ok(Comparison::Holds)
}

/// Returns a violating point when `f <= upper` fails.
fn below_via_domination(f: &LinFun, upper: &SublinFun) -> Result<Option<ExtVec>, FunctionalError> {
    if dominated_by_max(f, upper)?.is_some() {
        return Ok(None);
    }
    let single = SuperlinFun::new(vec![f.clone()])?;
    match check_min_below(&single, upper)? {
        MinBelow::Violated { witness, .. } => Ok(Some(witness)),
        MinBelow::Holds => unreachable!("domination and min-below disagree"),
    }
}

fn sampled_leq(phi: &Functional, psi: &Functional, budget: usize, seed: u64) -> Comparison {
    let dim = phi.dim();
    let grid = sample::small_grid(dim, budget);
    let mut rng = sample::rng(seed);
    let extra = budget.saturating_sub(grid.len());
    let randoms = (0..extra).map(|_| sample::ext_vec(&mut rng, dim, 8, 4, 0.15));
    let mut count = 0;
    for y in grid.into_iter().chain(randoms) {
        count += 1;
        let lhs = phi.eval(&y).expect("dimension checked");
        let rhs = psi.eval(&y).expect("dimension checked");
        if lhs > rhs {
            return Comparison::Violated { witness: y };
        }
    }
    Comparison::NotRefuted { samples: count }
}
