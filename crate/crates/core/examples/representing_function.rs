//! Recovering the function that represents a linear functional on simple
//! valuations, and the finite checks around it.

use std::sync::Arc;

use conedual::extreal::ExtReal;
use conedual::finspace::FinitePoset;
use conedual::valuations::{
    lemma1_directedness_check, lemma2_sup_check, ss_recover, test_valuations, DualFunctionalRep,
};

fn main() {
    let v = FinitePoset::from_cover_pairs(3, &[(0, 1), (0, 2)]).unwrap();
    let poset = Arc::new(v);
    let phi = DualFunctionalRep::new(vec![ExtReal::one(), ExtReal::from(2), ExtReal::Infinity]);
    let f = ss_recover(&phi, &poset).unwrap();
    println!("recovered f = {:?}", f.values().iter().map(|x| x.to_string()).collect::<Vec<_>>());
    for mu in test_valuations(&poset, 3, 7) {
        let w: Vec<String> = mu.weights().iter().map(|x| x.to_string()).collect();
        println!("  mu = ({}): phi(mu) = {}, mu(f) = {}", w.join(", "), phi.apply(&mu).unwrap(), mu.eval(&f).unwrap());
    }
    let report = lemma2_sup_check(&phi, &poset, &f.step_chain(), 50, 7).unwrap();
    println!("sup over the step chain attains phi: {}", report.holds());
    let grid = lemma1_directedness_check(&phi, &poset, 2, &ExtReal::from(2), 50, 7).unwrap();
    println!("admissible grid functions: {} of {}, directed: {}", grid.admissible, grid.candidates, grid.directed);

    let bad = DualFunctionalRep::new(vec![ExtReal::from(5), ExtReal::one(), ExtReal::one()]);
    println!("non-monotone coefficients: {:?}", ss_recover(&bad, &poset).unwrap_err());
}
