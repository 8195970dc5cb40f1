//! The specialization order of the weak upper topology generated by
//! `(1,0)` and `(1,1)` is not the order induced by every projection.

use conedual::convex_sep::ExtVec;
use conedual::functionals::{spec_leq, LinFun};

fn main() {
    let gens = [LinFun::from_integers(&[1, 0]), LinFun::from_integers(&[1, 1])];
    let y = ExtVec::from_integers(&[1, 1]);
    let y2 = ExtVec::from_integers(&[2, 0]);
    println!("{y} <= {y2} in the specialization order: {}", spec_leq(&y, &y2, &gens).unwrap());
    let pi2 = LinFun::from_integers(&[0, 1]);
    println!("pi2{y} = {}, pi2{y2} = {}", pi2.eval(&y).unwrap(), pi2.eval(&y2).unwrap());
}
