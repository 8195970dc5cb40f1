//! Separating a finitely generated convex set from the open corner
//! `V = { x : x_i > 1 for all i }`.

use conedual::convex_sep::{combination, separate, verify_outcome, ExtVec, SeparationOutcome};

fn report(gens: &[ExtVec], dim: usize) {
    let listed: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    println!("generators {}", listed.join(" "));
    let out = separate(gens, dim).unwrap();
    match &out {
        SeparationOutcome::Separated(a) => {
            let w: Vec<String> = a.as_slice().iter().map(|x| x.to_string()).collect();
            println!("  separated by a = ({}): a.p <= 1 on the hull, a.y > 1 on V", w.join(", "));
        }
        SeparationOutcome::MeetsV(w) => {
            println!("  hull meets V at {}", combination(gens, w, dim));
        }
    }
    println!("  certificate verified: {}", verify_outcome(gens, dim, &out));
}

fn main() {
    report(&[ExtVec::from_integers(&[2, 0]), ExtVec::from_integers(&[0, 2])], 2);
    report(&[ExtVec::from_integers(&[3, 0]), ExtVec::from_integers(&[0, 3])], 2);
    let inf: ExtVec = serde_json::from_str(r#"["inf", "0"]"#).unwrap();
    report(std::slice::from_ref(&inf), 2);
    report(&[inf, ExtVec::from_ratios(&[(1, 2), (3, 2)])], 2);
}
