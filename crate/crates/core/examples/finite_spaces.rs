//! Finite posets with the Alexandrov topology: opens, lsc functions and
//! their step decompositions.

use std::sync::Arc;

use conedual::extreal::ExtReal;
use conedual::finspace::{is_lsc, posets_up_to_iso, FinitePoset, LscFun};

fn main() {
    for n in 1..=5 {
        println!("posets on {n} elements up to isomorphism: {}", posets_up_to_iso(n).len());
    }
    // a diamond: 0 below 1 and 2, both below 3
    let diamond = Arc::new(FinitePoset::from_cover_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap());
    let opens: Vec<String> = diamond.all_opens(12).unwrap().iter().map(|u| u.to_string()).collect();
    println!("opens of the diamond: {}", opens.join(" "));

    let values = vec![ExtReal::zero(), ExtReal::ratio(1, 2), ExtReal::from(2), ExtReal::Infinity];
    println!("monotone: {}", is_lsc(&values, &diamond));
    let f = LscFun::new(diamond.clone(), values).unwrap();
    for (r, u) in f.to_steps() {
        println!("  step {r} on {u}");
    }
    let swapped = vec![ExtReal::from(3), ExtReal::one(), ExtReal::one(), ExtReal::one()];
    println!("{:?}", LscFun::new(diamond, swapped).unwrap_err());
}
