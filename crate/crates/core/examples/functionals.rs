//! Linear, sublinear and superlinear functionals, their open sets and
//! Minkowski functionals.

use conedual::convex_sep::ExtVec;
use conedual::extreal::ExtReal;
use conedual::functionals::{
    leq_functional, member_a, member_u, minkowski, Comparison, Functional, LinFun, OpenSetRep,
};

fn main() {
    let phi: Functional = serde_json::from_str(r#"{"kind":"max","branches":[["2","0"],["0","2"]]}"#).unwrap();
    let psi: Functional = serde_json::from_str(r#"{"kind":"min","branches":[["1","0"],["0","1"]]}"#).unwrap();
    let y = ExtVec::from_ratios(&[(1, 3), (3, 4)]);
    println!("phi{y} = {}, psi{y} = {}", phi.eval(&y).unwrap(), psi.eval(&y).unwrap());
    println!("y in U_phi: {}, y in A_phi: {}", member_u(&phi, &y).unwrap(), member_a(&phi, &y).unwrap());

    let open = OpenSetRep::basic(vec![LinFun::from_integers(&[1, 0]), LinFun::from_integers(&[0, 1])]).unwrap();
    for p in [ExtVec::from_integers(&[2, 3]), serde_json::from_str(r#"["1/2","inf"]"#).unwrap()] {
        let m = minkowski(&open, &p).unwrap();
        println!("minkowski at {p} = {m}; in U: {}; in (m/2)U: {}",
            open.contains(&p).unwrap(),
            open.contains_scaled(&(m.clone() * ExtReal::ratio(1, 2)), &p).unwrap());
    }

    for (name, a, b) in [("psi <= phi", &psi, &phi), ("phi <= psi", &phi, &psi)] {
        match leq_functional(a, b, 0).unwrap() {
            Comparison::Holds => println!("{name}: holds"),
            Comparison::Violated { witness } => println!("{name}: fails at {witness}"),
            Comparison::NotRefuted { samples } => println!("{name}: no violation in {samples} samples"),
        }
    }
}
