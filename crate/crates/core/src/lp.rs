//! Exact rational linear programming.
//!
//! A dense two-phase simplex over [`BigRational`] with Bland's pivoting
//! rule. Every answer carries something a caller can check without trusting
//! the solver: a feasible point, a Farkas certificate of infeasibility, or
//! an improving ray.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) -> Self {
        Constraint { coeffs, relation, rhs }
    }

    fn lhs(&self, x: &[BigRational]) -> BigRational {
        dot(&self.coeffs, x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// A linear program. Variables are nonnegative unless flagged in `free`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub num_vars: usize,
    pub free: Vec<bool>,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<BigRational>,
    pub sense: Sense,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpResult {
    Optimal {
        point: Vec<BigRational>,
        value: BigRational,
    },
    /// One multiplier per constraint; see [`LpProblem::verify_farkas`].
    Infeasible { farkas: Vec<BigRational> },
    /// A direction that keeps every constraint satisfied while strictly
    /// improving the objective; see [`LpProblem::verify_ray`].
    Unbounded {
        point: Vec<BigRational>,
        ray: Vec<BigRational>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("malformed problem: {0}")]
    MalformedProblem(String),
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

impl LpProblem {
    /// Feasibility problem (zero objective) over nonnegative variables.
    pub fn feasibility(num_vars: usize, constraints: Vec<Constraint>) -> Self {
        LpProblem {
            num_vars,
            free: vec![false; num_vars],
            constraints,
            objective: vec![BigRational::zero(); num_vars],
            sense: Sense::Maximize,
        }
    }

    fn validate(&self) -> Result<(), LpError> {
        if self.free.len() != self.num_vars {
            return Err(LpError::MalformedProblem(format!(
                "free flags have length {}, expected {}",
                self.free.len(),
                self.num_vars
            )));
        }
        if self.objective.len() != self.num_vars {
            return Err(LpError::MalformedProblem(format!(
                "objective has length {}, expected {}",
                self.objective.len(),
                self.num_vars
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != self.num_vars {
                return Err(LpError::MalformedProblem(format!(
                    "constraint {i} has {} coefficients, expected {}",
                    c.coeffs.len(),
                    self.num_vars
                )));
            }
        }
        Ok(())
    }

    /// Exact feasibility check of a point against every constraint and sign bound.
    pub fn is_feasible_point(&self, x: &[BigRational]) -> bool {
        if x.len() != self.num_vars {
            return false;
        }
        let signs_ok = x
            .iter()
            .zip(&self.free)
            .all(|(v, &free)| free || !v.is_negative());
        signs_ok
            && self.constraints.iter().all(|c| {
                let lhs = c.lhs(x);
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }

    /// Checks that `u` refutes feasibility: `u_i >= 0` on `<=` rows,
    /// `u_i <= 0` on `>=` rows, `u^T A >= 0` on nonnegative variables,
    /// `u^T A = 0` on free ones, and `u^T b < 0`. Any feasible `x` would give
    /// `0 <= u^T A x <= u^T b < 0`.
    pub fn verify_farkas(&self, u: &[BigRational]) -> bool {
        if u.len() != self.constraints.len() {
            return false;
        }
        let signs_ok = u.iter().zip(&self.constraints).all(|(ui, c)| match c.relation {
            Relation::Le => !ui.is_negative(),
            Relation::Ge => !ui.is_positive(),
            Relation::Eq => true,
        });
        if !signs_ok {
            return false;
        }
        let columns_ok = (0..self.num_vars).all(|j| {
            let s = u
                .iter()
                .zip(&self.constraints)
                .fold(BigRational::zero(), |acc, (ui, c)| acc + ui * &c.coeffs[j]);
            if self.free[j] {
                s.is_zero()
            } else {
                !s.is_negative()
            }
        });
        let rhs = u
            .iter()
            .zip(&self.constraints)
            .fold(BigRational::zero(), |acc, (ui, c)| acc + ui * &c.rhs);
        columns_ok && rhs.is_negative()
    }

    /// Checks that `point + t * ray` stays feasible for all `t >= 0` and the
    /// objective strictly improves along `ray`.
    pub fn verify_ray(&self, point: &[BigRational], ray: &[BigRational]) -> bool {
        if ray.len() != self.num_vars || !self.is_feasible_point(point) {
            return false;
        }
        let signs_ok = ray.iter().zip(&self.free).all(|(d, &free)| free || !d.is_negative());
        let rows_ok = self.constraints.iter().all(|c| {
            let s = c.lhs(ray);
            match c.relation {
                Relation::Le => !s.is_positive(),
                Relation::Ge => !s.is_negative(),
                Relation::Eq => s.is_zero(),
            }
        });
        let gain = dot(&self.objective, ray);
        let improves = match self.sense {
            Sense::Maximize => gain.is_positive(),
            Sense::Minimize => gain.is_negative(),
        };
        signs_ok && rows_ok && improves
    }
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    width: usize,
}

enum Pivoting {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let p = self.rows[r][q].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[q].is_zero() {
                continue;
            }
            let factor = row[q].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &factor * pv;
                }
            }
        }
        self.basis[r] = q;
    }

    fn reduced_cost(&self, cost: &[BigRational], j: usize) -> BigRational {
        let mut z = BigRational::zero();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[i]];
            if !cb.is_zero() && !row[j].is_zero() {
                z += cb * &row[j];
            }
        }
        &cost[j] - z
    }

    /// Maximizes `cost` with Bland's rule over columns `0..allowed`.
    fn run(&mut self, cost: &[BigRational], allowed: usize) -> Pivoting {
        loop {
            let entering = (0..allowed)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j).is_positive());
            let Some(q) = entering else {
                return Pivoting::Optimal;
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][q];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, q),
                None => return Pivoting::Unbounded(q),
            }
        }
    }

    fn column_values(&self, ncols: usize) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < ncols {
                x[b] = self.rhs(i).clone();
            }
        }
        x
    }
}

/// Solves `problem` exactly.
pub fn solve_lp(problem: &LpProblem) -> Result<LpResult, LpError> {
    problem.validate()?;
    let n = problem.num_vars;
    let m = problem.constraints.len();

    // Structural columns: one per variable, plus a negative part for free ones.
    let mut var_cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    let mut n_struct = 0;
    for &free in &problem.free {
        if free {
            var_cols.push((n_struct, Some(n_struct + 1)));
            n_struct += 2;
        } else {
            var_cols.push((n_struct, None));
            n_struct += 1;
        }
    }
    let slack_of: Vec<Option<usize>> = {
        let mut next = n_struct;
        problem
            .constraints
            .iter()
            .map(|c| {
                if c.relation == Relation::Eq {
                    None
                } else {
                    next += 1;
                    Some(next - 1)
                }
            })
            .collect()
    };
    let n_slack = slack_of.iter().flatten().count();
    let art0 = n_struct + n_slack;
    let width = art0 + m;

    let mut flip = vec![false; m];
    let mut rows = Vec::with_capacity(m);
    for (i, c) in problem.constraints.iter().enumerate() {
        let mut row = vec![BigRational::zero(); width + 1];
        for (j, a) in c.coeffs.iter().enumerate() {
            let (pos, neg) = var_cols[j];
            row[pos] = a.clone();
            if let Some(neg) = neg {
                row[neg] = -a.clone();
            }
        }
        if let Some(s) = slack_of[i] {
            row[s] = match c.relation {
                Relation::Le => BigRational::one(),
                _ => -BigRational::one(),
            };
        }
        row[width] = c.rhs.clone();
        if c.rhs.is_negative() {
            flip[i] = true;
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[art0 + i] = BigRational::one();
        rows.push(row);
    }
    let mut tab = Tableau {
        rows,
        basis: (art0..art0 + m).collect(),
        width,
    };

    // Phase 1: maximize -(sum of artificials).
    let mut phase1 = vec![BigRational::zero(); width];
    for c in phase1.iter_mut().skip(art0) {
        *c = -BigRational::one();
    }
    if let Pivoting::Unbounded(_) = tab.run(&phase1, width) {
        unreachable!("phase one objective is bounded above by zero");
    }
    let infeasibility = (0..m)
        .filter(|&i| tab.basis[i] >= art0)
        .fold(BigRational::zero(), |acc, i| acc + tab.rhs(i));
    if infeasibility.is_positive() {
        // Dual of the phase-one problem: y = c_B B^{-1}, where B^{-1} sits
        // under the artificial columns.
        let y: Vec<BigRational> = (0..m)
            .map(|k| {
                (0..m)
                    .filter(|&i| tab.basis[i] >= art0)
                    .fold(BigRational::zero(), |acc, i| acc + &tab.rows[i][art0 + k])
            })
            .collect();
        let farkas = y
            .into_iter()
            .zip(&flip)
            .map(|(yk, &f)| if f { yk } else { -yk })
            .collect();
        return Ok(LpResult::Infeasible { farkas });
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= art0 {
            match (0..art0).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut phase2 = vec![BigRational::zero(); width];
    for (j, c) in problem.objective.iter().enumerate() {
        let c = match problem.sense {
            Sense::Maximize => c.clone(),
            Sense::Minimize => -c.clone(),
        };
        let (pos, neg) = var_cols[j];
        if let Some(neg) = neg {
            phase2[neg] = -c.clone();
        }
        phase2[pos] = c;
    }

    let fold_vars = |cols: &[BigRational]| -> Vec<BigRational> {
        var_cols
            .iter()
            .map(|&(pos, neg)| match neg {
                Some(neg) => &cols[pos] - &cols[neg],
                None => cols[pos].clone(),
            })
            .collect()
    };

    match tab.run(&phase2, art0) {
        Pivoting::Optimal => {
            let point = fold_vars(&tab.column_values(art0));
            let value = dot(&problem.objective, &point);
            Ok(LpResult::Optimal { point, value })
        }
        Pivoting::Unbounded(q) => {
            let point = fold_vars(&tab.column_values(art0));
            let mut d = vec![BigRational::zero(); art0];
            d[q] = BigRational::one();
            for (i, &b) in tab.basis.iter().enumerate() {
                if b < art0 {
                    d[b] = -tab.rows[i][q].clone();
                }
            }
            Ok(LpResult::Unbounded {
                point,
                ray: fold_vars(&d),
            })
        }
    }
}
