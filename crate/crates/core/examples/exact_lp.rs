//! The exact simplex: an optimum, an infeasibility certificate, a ray.

use conedual::lp::{solve_lp, Constraint, LpProblem, LpResult, Relation, Sense};
use num_bigint::BigInt;
use num_rational::BigRational;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn show(p: &LpProblem) {
    match solve_lp(p).unwrap() {
        LpResult::Optimal { point, value } => {
            let pt: Vec<String> = point.iter().map(|x| x.to_string()).collect();
            println!("optimal at ({}), value {value}", pt.join(", "));
        }
        LpResult::Infeasible { farkas } => {
            let u: Vec<String> = farkas.iter().map(|x| x.to_string()).collect();
            println!("infeasible, certificate u = ({}) verified: {}", u.join(", "), p.verify_farkas(&farkas));
        }
        LpResult::Unbounded { point, ray } => {
            println!("unbounded, ray verified: {}", p.verify_ray(&point, &ray));
        }
    }
}

fn main() {
    // max x + 2y s.t. x + y <= 4, y <= 3
    show(&LpProblem {
        num_vars: 2,
        free: vec![false; 2],
        constraints: vec![
            Constraint::new(vec![q(1), q(1)], Relation::Le, q(4)),
            Constraint::new(vec![q(0), q(1)], Relation::Le, q(3)),
        ],
        objective: vec![q(1), q(2)],
        sense: Sense::Maximize,
    });
    // x + y <= 1 and x + y >= 2
    show(&LpProblem::feasibility(
        2,
        vec![
            Constraint::new(vec![q(1), q(1)], Relation::Le, q(1)),
            Constraint::new(vec![q(1), q(1)], Relation::Ge, q(2)),
        ],
    ));
    // max x s.t. x - y <= 1
    show(&LpProblem {
        num_vars: 2,
        free: vec![false; 2],
        constraints: vec![Constraint::new(vec![q(1), q(-1)], Relation::Le, q(1))],
        objective: vec![q(1), q(0)],
        sense: Sense::Maximize,
    });
}
