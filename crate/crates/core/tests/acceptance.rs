//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines are always printed.

use std::process::ExitCode;

use conedual::check::{run_suite, SuiteReport};
use conedual::sample::DEFAULT_SEED;

fn find<'a>(reports: &'a [SuiteReport], name: &str) -> &'a SuiteReport {
    reports.iter().find(|r| r.suite == name).expect("suite present")
}

fn summary(r: &SuiteReport) -> String {
    let stats: Vec<String> = r.stats.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut s = format!("{}: {}/{} checks passed", r.suite, r.checks - r.failed, r.checks);
    if !stats.is_empty() {
        s.push_str(&format!(" [{}]", stats.join(", ")));
    }
    for f in &r.failures {
        s.push_str(&format!("\n    failure: {f}"));
    }
    s
}

fn main() -> ExitCode {
    let started = std::time::Instant::now();
    let reports = run_suite("all", DEFAULT_SEED).expect("known suite");
    let rerun = run_suite("all", DEFAULT_SEED).expect("known suite");

    let sep = find(&reports, "separation");
    let refined = sep.stats.get("oracle_refined").copied().unwrap_or(0);
    let ss = find(&reports, "schroder-simpson");
    let mobius = find(&reports, "mobius");
    let identical = reports.len() == rerun.len()
        && reports.iter().zip(&rerun).all(|(a, b)| a.to_json() == b.to_json());

    let criteria: Vec<(&str, bool, String)> = vec![
        ("extended reals: exhaustive laws", find(&reports, "extreal").passed(), summary(find(&reports, "extreal"))),
        (
            "separation: 500 seeded instances, certificates and oracle agreement at denominator 32",
            sep.passed() && refined == 0,
            summary(sep),
        ),
        ("interpolation: sandwich, certificates and violations", find(&reports, "interpolation").passed(), summary(find(&reports, "interpolation"))),
        ("minkowski functionals and open-set correspondence", find(&reports, "minkowski").passed(), summary(find(&reports, "minkowski"))),
        (
            "representing functions on posets up to 5 elements; moebius round trips",
            ss.passed() && mobius.passed(),
            format!("{}\n    {}", summary(ss), summary(mobius)),
        ),
        ("two-point specialization example", find(&reports, "example").passed(), summary(find(&reports, "example"))),
        ("directedness on posets up to 4 elements (d = 2, cap = 2)", find(&reports, "lemma1").passed(), summary(find(&reports, "lemma1"))),
        (
            "determinism: reruns with the same seed are byte-identical",
            identical,
            format!("{} suite reports compared", reports.len()),
        ),
    ];

    let mut all = true;
    for (i, (name, ok, detail)) in criteria.iter().enumerate() {
        all &= ok;
        println!("{} criterion {}: {name}", if *ok { "PASS" } else { "FAIL" }, i + 1);
        println!("    {detail}");
    }
    println!("acceptance finished in {:.1}s", started.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
