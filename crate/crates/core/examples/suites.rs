//! Runs a property suite, by default the fast ones, and prints a summary.
//! Pass a suite name (or `all`) as the first argument.

use conedual::check::run_suite;
use conedual::sample::DEFAULT_SEED;

fn main() {
    let names: Vec<String> = match std::env::args().nth(1) {
        Some(name) => vec![name],
        None => ["extreal", "separation", "mobius", "example"].map(String::from).to_vec(),
    };
    for name in names {
        let Some(reports) = run_suite(&name, DEFAULT_SEED) else {
            eprintln!("unknown suite {name}");
            std::process::exit(1);
        };
        for r in reports {
            println!("{:<18} {:>7} checks, {} failed {:?}", r.suite, r.checks, r.failed, r.stats);
        }
    }
}
