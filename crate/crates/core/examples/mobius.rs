//! Moebius inversion between point weights and valuations on open sets.

use std::collections::BTreeMap;
use std::sync::Arc;

use conedual::extreal::ExtReal;
use conedual::finspace::{FinitePoset, OpenSet};
use conedual::valuations::{SimpleValuation, ValuationOnOpens};

fn main() {
    let poset = Arc::new(FinitePoset::from_cover_pairs(3, &[(0, 1), (0, 2)]).unwrap());
    let mu = SimpleValuation::new(poset.clone(), vec![ExtReal::from(3), ExtReal::one(), ExtReal::ratio(1, 2)]).unwrap();
    let nu = mu.to_opens(12).unwrap();
    for (u, v) in nu.table() {
        println!("nu({u}) = {v}");
    }
    println!("laws hold: {:?}", nu.check_laws());
    let back = nu.from_opens().unwrap();
    println!("recovered weights equal: {}", back == mu);

    let mut table = BTreeMap::new();
    table.insert(OpenSet::from_elements(&[1]), ExtReal::from(2));
    table.insert(OpenSet::from_elements(&[2]), ExtReal::from(2));
    table.insert(OpenSet::from_elements(&[1, 2]), ExtReal::from(3));
    table.insert(OpenSet::from_elements(&[0, 1, 2]), ExtReal::from(4));
    let bad = ValuationOnOpens::new(poset, table).unwrap();
    println!("non-modular table: {:?} / {:?}", bad.check_laws(), bad.from_opens().unwrap_err());
}
