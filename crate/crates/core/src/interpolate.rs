//! Interpolating a convex combination between a min-clause and a sublinear
//! functional.
//!
//! Given linear `g_1..g_n` and `phi = max_k h_k` with `min_i g_i <= phi`,
//! there are simplex weights `a` with `min_i g_i <= sum_i a_i g_i <= phi`.
//! The weights are found by one exact LP over `(a, lambda)`:
//!
//! ```text
//! sum_i a_i g_i <= sum_k lambda_k h_k   (coordinatewise)
//! a in simplex_n, lambda in simplex_K
//! ```
//!
//! `lambda` is returned as the certificate for the right inequality.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::convex_sep::{ExtVec, SeparationWeights};
use crate::extreal::ExtReal;
use crate::functionals::{dominated_by_max, FunctionalError, LinFun, SublinFun, SuperlinFun};
use crate::lp::{solve_lp, Constraint, LpProblem, LpResult, Relation, Sense};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpolateError {
    #[error("min-clause is not below phi; violated at {witness}")]
    PreconditionViolated { witness: ExtVec },
    #[error("clause {clause}: {source}")]
    Clause {
        clause: usize,
        #[source]
        source: Box<InterpolateError>,
    },
    #[error("generator index {0} out of range")]
    BadIndex(usize),
    #[error("empty clause")]
    EmptyClause,
    #[error(transparent)]
    Functional(#[from] FunctionalError),
}

impl From<crate::lp::LpError> for InterpolateError {
    fn from(e: crate::lp::LpError) -> Self {
        InterpolateError::Functional(e.into())
    }
}

/// Answer of [`check_min_below`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinBelow {
    Holds,
    /// At `witness` (normalized to sum one) every `g_i` exceeds every `h_k`
    /// by at least `gap > 0`.
    Violated { witness: ExtVec, gap: BigRational },
}

impl MinBelow {
    pub fn holds(&self) -> bool {
        matches!(self, MinBelow::Holds)
    }
}

fn rational_rows(funs: &[LinFun]) -> Result<Vec<Vec<BigRational>>, FunctionalError> {
    funs.iter().map(LinFun::rational_coeffs).collect()
}

/// Decides `min_i g_i(y) <= max_k h_k(y)` for every `y` in the orthant.
///
/// Maximizes `t` subject to `(g_i - h_k) . y >= t` for all pairs and
/// `sum_j y_j = 1`, `y >= 0`. The inequality holds iff the optimum is `<= 0`.
pub fn check_min_below(clause: &SuperlinFun, phi: &SublinFun) -> Result<MinBelow, FunctionalError> {
    if clause.dim() != phi.dim() {
        return Err(FunctionalError::DimensionMismatch {
            expected: phi.dim(),
            found: clause.dim(),
        });
    }
    let m = phi.dim();
    let gs = rational_rows(clause.branches())?;
    let hs = rational_rows(phi.branches())?;
    if m == 0 {
        return Ok(MinBelow::Holds);
    }

    // variables: y_0..y_{m-1} >= 0, t free
    let mut constraints = Vec::with_capacity(gs.len() * hs.len() + 1);
    for g in &gs {
        for h in &hs {
            let mut coeffs: Vec<BigRational> = g.iter().zip(h).map(|(a, b)| a - b).collect();
            coeffs.push(-BigRational::one());
            constraints.push(Constraint::new(coeffs, Relation::Ge, BigRational::zero()));
        }
    }
    let mut simplex = vec![BigRational::one(); m];
    simplex.push(BigRational::zero());
    constraints.push(Constraint::new(simplex, Relation::Eq, BigRational::one()));

    let mut objective = vec![BigRational::zero(); m];
    objective.push(BigRational::one());
    let mut free = vec![false; m];
    free.push(true);
    let problem = LpProblem {
        num_vars: m + 1,
        free,
        constraints,
        objective,
        sense: Sense::Maximize,
    };
    match solve_lp(&problem)? {
        LpResult::Optimal { point, value } => {
            if value.is_positive() {
                let witness = ExtVec(point[..m].iter().cloned().map(ExtReal::Finite).collect());
                Ok(MinBelow::Violated { witness, gap: value })
            } else {
                Ok(MinBelow::Holds)
            }
        }
        other => unreachable!("bounded feasible LP returned {other:?}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpolationResult {
    /// Weights over the clause functionals.
    pub weights: SeparationWeights,
    /// Weights over the branches of `phi`.
    pub lambda: SeparationWeights,
    /// `sum_i a_i g_i`.
    pub combined: LinFun,
}

/// Finds simplex weights `a` with `min_i g_i <= sum_i a_i g_i <= phi`.
pub fn interpolate(clause: &[LinFun], phi: &SublinFun) -> Result<InterpolationResult, InterpolateError> {
    let clause_fun = SuperlinFun::new(clause.to_vec()).map_err(|e| match e {
        FunctionalError::NoBranches => InterpolateError::EmptyClause,
        other => other.into(),
    })?;
    let gs = rational_rows(clause)?;
    let hs = rational_rows(phi.branches())?;

    if clause.len() == 1 {
        return match dominated_by_max(&clause[0], phi)? {
            Some(lambda) => Ok(InterpolationResult {
                weights: SeparationWeights::new(vec![BigRational::one()]).unwrap(),
                lambda,
                combined: clause[0].clone(),
            }),
            None => Err(precondition(&clause_fun, phi)?),
        };
    }

    if let MinBelow::Violated { witness, .. } = check_min_below(&clause_fun, phi)? {
        return Err(InterpolateError::PreconditionViolated { witness });
    }

    let n = gs.len();
    let k = hs.len();
    let m = phi.dim();
    let mut constraints = Vec::with_capacity(m + 2);
    let mut simplex_a = vec![BigRational::one(); n];
    simplex_a.extend(std::iter::repeat_n(BigRational::zero(), k));
    constraints.push(Constraint::new(simplex_a, Relation::Eq, BigRational::one()));
    let mut simplex_l = vec![BigRational::zero(); n];
    simplex_l.extend(std::iter::repeat_n(BigRational::one(), k));
    constraints.push(Constraint::new(simplex_l, Relation::Eq, BigRational::one()));
    for j in 0..m {
        let mut coeffs: Vec<BigRational> = gs.iter().map(|g| g[j].clone()).collect();
        coeffs.extend(hs.iter().map(|h| -h[j].clone()));
        constraints.push(Constraint::new(coeffs, Relation::Le, BigRational::zero()));
    }

    match solve_lp(&LpProblem::feasibility(n + k, constraints))? {
        LpResult::Optimal { point, .. } => {
            let weights = SeparationWeights::new(point[..n].to_vec()).expect("simplex row");
            let lambda = SeparationWeights::new(point[n..].to_vec()).expect("simplex row");
            let combined = LinFun::combine(weights.as_slice(), clause);
            Ok(InterpolationResult {
                weights,
                lambda,
                combined,
            })
        }
        // Cannot happen when the min-below check passed; report the clause as
        // violating rather than panic.
        _ => Err(precondition(&clause_fun, phi)?),
    }
}

fn precondition(clause: &SuperlinFun, phi: &SublinFun) -> Result<InterpolateError, FunctionalError> {
    match check_min_below(clause, phi)? {
        MinBelow::Violated { witness, .. } => Ok(InterpolateError::PreconditionViolated { witness }),
        MinBelow::Holds => Ok(InterpolateError::PreconditionViolated {
            witness: ExtVec::zeros(phi.dim()),
        }),
    }
}

/// Checks `sum_i a_i g_i <= sum_k lambda_k h_k` coordinatewise, exactly.
pub fn verify_certificate(clause: &[LinFun], phi: &SublinFun, result: &InterpolationResult) -> bool {
    if result.weights.len() != clause.len() || result.lambda.len() != phi.branches().len() {
        return false;
    }
    let lhs = LinFun::combine(result.weights.as_slice(), clause);
    let rhs = LinFun::combine(result.lambda.as_slice(), phi.branches());
    lhs == result.combined && lhs.coeffs.leq(&rhs.coeffs)
}

/// One element of the cone found per clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainWitness {
    pub x: LinFun,
    pub weights: SeparationWeights,
    pub lambda: SeparationWeights,
}

/// For each clause (indices into `c_gens`) returns `x = sum_i a_i x_i`, a
/// convex combination of the clause generators, with
/// `min_i x_i <= x <= phi` pointwise.
pub fn theorem_main_witnesses(
    clauses: &[Vec<usize>],
    c_gens: &[LinFun],
    phi: &SublinFun,
) -> Result<Vec<MainWitness>, InterpolateError> {
    clauses
        .iter()
        .enumerate()
        .map(|(ci, clause)| {
            let funs = clause
                .iter()
                .map(|&i| c_gens.get(i).cloned().ok_or(InterpolateError::BadIndex(i)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| wrap(ci, e))?;
            let res = interpolate(&funs, phi).map_err(|e| wrap(ci, e))?;
            debug_assert!(dominated_by_max(&res.combined, phi).is_ok_and(|c| c.is_some()));
            Ok(MainWitness {
                x: res.combined,
                weights: res.weights,
                lambda: res.lambda,
            })
        })
        .collect()
}

fn wrap(clause: usize, e: InterpolateError) -> InterpolateError {
    InterpolateError::Clause {
        clause,
        source: Box::new(e),
    }
}

/// Checks `phi(y) = max_x <x, y>` over the witnesses at every sample point.
pub fn witnesses_attain(phi: &SublinFun, witnesses: &[MainWitness], points: &[ExtVec]) -> bool {
    if witnesses.is_empty() {
        return false;
    }
    points.iter().all(|y| {
        let best = witnesses.iter().map(|w| w.x.coeffs.dot(y)).max().unwrap();
        phi.eval(y).is_ok_and(|v| v == best)
    })
}

/// `min_i g_i(y) <= sum_i a_i g_i(y)` holds for every `y` when `a` is a
/// probability vector; this evaluates it at one point.
pub fn average_dominates_min(clause: &[LinFun], weights: &SeparationWeights, y: &ExtVec) -> bool {
    let values: Vec<ExtReal> = clause.iter().map(|g| g.coeffs.dot(y)).collect();
    let min = values.iter().min().cloned().unwrap_or_else(ExtReal::zero);
    let avg = weights
        .as_slice()
        .iter()
        .zip(&values)
        .map(|(a, v)| &ExtReal::Finite(a.clone()) * v)
        .sum::<ExtReal>();
    min <= avg
}
