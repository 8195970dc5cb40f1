//! Interpolating a convex combination between a minimum of linear
//! functionals and a maximum of linear functionals.

use conedual::convex_sep::ExtVec;
use conedual::functionals::{LinFun, SublinFun, SuperlinFun};
use conedual::interpolate::{
    check_min_below, interpolate, theorem_main_witnesses, verify_certificate, witnesses_attain, MinBelow,
};
use conedual::sample::small_grid;

fn main() {
    let clause = vec![LinFun::from_integers(&[3, 0, 1]), LinFun::from_integers(&[0, 3, 1])];
    let phi = SublinFun::new(vec![LinFun::from_integers(&[2, 1, 1]), LinFun::from_integers(&[1, 2, 1])]).unwrap();

    let min = SuperlinFun::new(clause.clone()).unwrap();
    println!("min below phi: {}", check_min_below(&min, &phi).unwrap().holds());
    let res = interpolate(&clause, &phi).unwrap();
    let a: Vec<String> = res.weights.as_slice().iter().map(|x| x.to_string()).collect();
    let l: Vec<String> = res.lambda.as_slice().iter().map(|x| x.to_string()).collect();
    println!("a = ({}), interpolant {}", a.join(", "), res.combined.coeffs);
    println!("lambda = ({}), certificate verified: {}", l.join(", "), verify_certificate(&clause, &phi, &res));
    let y = ExtVec::from_integers(&[1, 4, 2]);
    println!(
        "at {y}: min {} <= {} <= phi {}",
        min.eval(&y).unwrap(),
        res.combined.eval(&y).unwrap(),
        phi.eval(&y).unwrap()
    );

    // one witness per clause; singleton clauses on phi's branches recover phi
    let gens = phi.branches().to_vec();
    let ws = theorem_main_witnesses(&[vec![0], vec![1]], &gens, &phi).unwrap();
    println!("witnesses attain phi on the grid: {}", witnesses_attain(&phi, &ws, &small_grid(3, 125)));

    let too_big = SuperlinFun::new(vec![LinFun::from_integers(&[3, 3, 3])]).unwrap();
    if let MinBelow::Violated { witness, gap } = check_min_below(&too_big, &phi).unwrap() {
        println!("{{(3,3,3)}} is not below phi: violated at {witness} by {gap}");
    }
}
