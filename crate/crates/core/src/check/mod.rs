//! Seeded property suites. Each suite returns a [`SuiteReport`] whose JSON
//! form is byte-identical across runs with the same seed.

pub mod oracle;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::convex_sep::{
    combination, in_v, separate, verify_outcome, ExtVec, SeparationOutcome, SeparationWeights,
};
use crate::extreal::ExtReal;
use crate::finspace::{self, lsc_violation, FinitePoset, LscFun, OpenSet};
use crate::functionals::{
    leq_functional, member_a, member_u, minkowski, spec_leq, Comparison, Functional, LinFun,
    OpenSetRep, SublinFun, SuperlinFun,
};
use crate::interpolate::{
    average_dominates_min, check_min_below, interpolate, verify_certificate, MinBelow,
};
use crate::sample::{self, SampleRng};
use crate::valuations::{
    lemma1_directedness_check, random_valuation, ss_recover, DualFunctionalRep, SimpleValuation,
    ValuationError,
};

const MAX_LISTED_FAILURES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: u64,
    pub failed: u64,
    pub failures: Vec<String>,
    pub stats: BTreeMap<String, u64>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            checks: 0,
            failed: 0,
            failures: Vec::new(),
            stats: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn bump(&mut self, key: &str) {
        *self.stats.entry(key.to_string()).or_insert(0) += 1;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub const SUITES: &[&str] = &[
    "extreal",
    "separation",
    "interpolation",
    "minkowski",
    "schroder-simpson",
    "mobius",
    "example",
    "lemma1",
];

/// Runs one suite by name, or all of them for `"all"`.
pub fn run_suite(name: &str, seed: u64) -> Option<Vec<SuiteReport>> {
    let one = |n: &str| -> Option<SuiteReport> {
        Some(match n {
            "extreal" => extreal_laws(),
            "separation" => separation(seed, 500),
            "interpolation" => interpolation(seed, 300, 100, 1000),
            "minkowski" => minkowski_correspondence(seed, 200),
            "schroder-simpson" => schroder_simpson(seed, 50, 200),
            "mobius" => mobius_round_trips(),
            "example" => specialization_example(),
            "lemma1" => lemma1_shadow(seed),
            _ => return None,
        })
    };
    if name == "all" {
        // one thread per suite; reports keep the order of SUITES
        std::thread::scope(|scope| {
            let handles: Vec<_> = SUITES.iter().map(|n| scope.spawn(move || one(n))).collect();
            handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
        })
    } else {
        one(name).map(|r| vec![r])
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Commutative-monoid, distributivity and monotonicity laws over
/// `{0, 1/3, 1/2, 1, 2, 3, inf}`.
pub fn extreal_laws() -> SuiteReport {
    let mut rep = SuiteReport::new("extreal", 0);
    let set = [
        ExtReal::zero(),
        ExtReal::ratio(1, 3),
        ExtReal::ratio(1, 2),
        ExtReal::one(),
        ExtReal::from(2),
        ExtReal::from(3),
        ExtReal::Infinity,
    ];
    let zero = ExtReal::zero();
    let one = ExtReal::one();
    for a in &set {
        rep.check(a + &zero == *a, || format!("{a} + 0"));
        rep.check(a * &one == *a, || format!("{a} * 1"));
        rep.check(a * &zero == zero && &zero * a == zero, || format!("{a} * 0"));
        if !a.is_zero() {
            rep.check(a * &ExtReal::Infinity == ExtReal::Infinity, || format!("{a} * inf"));
        }
        for b in &set {
            rep.check(a + b == b + a, || format!("{a} + {b} commutes"));
            rep.check(a * b == b * a, || format!("{a} * {b} commutes"));
            rep.check(a.leq(b) || b.leq(a), || format!("{a}, {b} comparable"));
            if b.is_finite() {
                let s = a + b;
                rep.check(s.sub_partial(b).as_ref() == Ok(a), || format!("({a}+{b})-{b}"));
            }
            for c in &set {
                rep.check((a + b) + c.clone() == a.clone() + (b + c), || format!("({a}+{b})+{c}"));
                rep.check((a * b) * c.clone() == a.clone() * (b * c), || format!("({a}*{b})*{c}"));
                rep.check(a * &(b + c) == (a * b) + (a * c), || format!("{a}*({b}+{c})"));
                rep.check(&(a + b) * c == (a * c) + (b * c), || format!("({a}+{b})*{c}"));
                if a <= b {
                    rep.check(a + c <= b + c, || format!("add monotone {a} {b} {c}"));
                    rep.check(a * c <= b * c, || format!("mul monotone {a} {b} {c}"));
                }
            }
        }
    }
    rep.check(ExtReal::zero() * ExtReal::Infinity == ExtReal::zero(), || "0 * inf".into());
    rep.check(
        ExtReal::Infinity.sub_partial(&ExtReal::Infinity).is_err(),
        || "inf - inf must be undefined".into(),
    );
    rep
}

fn random_separation_instance(rng: &mut SampleRng) -> (usize, Vec<ExtVec>) {
    let dim = rng.gen_range(1..=6);
    let count = rng.gen_range(1..=8);
    let max_value = rng.gen_range(1..=3);
    let gens = (0..count)
        .map(|_| sample::ext_vec(rng, dim, 16, max_value, 0.1))
        .collect();
    (dim, gens)
}

fn random_point_in_v(rng: &mut SampleRng, dim: usize) -> ExtVec {
    ExtVec(
        (0..dim)
            .map(|_| {
                if rng.gen_bool(0.1) {
                    ExtReal::Infinity
                } else {
                    let d = rng.gen_range(1..=16u64);
                    ExtReal::ratio(d + rng.gen_range(1..=3 * d), d)
                }
            })
            .collect(),
    )
}

/// Separation certificates on seeded random instances, cross-checked
/// against the dyadic brute-force oracle for `dim <= 3`.
pub fn separation(seed: u64, instances: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("separation", seed);
    let mut rng = sample::rng(seed);
    for inst in 0..instances {
        let (dim, gens) = random_separation_instance(&mut rng);
        let outcome = match separate(&gens, dim) {
            Ok(o) => o,
            Err(e) => {
                rep.check(false, || format!("instance {inst}: {e}"));
                continue;
            }
        };
        rep.check(verify_outcome(&gens, dim, &outcome), || {
            format!("instance {inst}: certificate rejected")
        });
        match &outcome {
            SeparationOutcome::Separated(a) => {
                rep.bump("separated");
                let sum = a.as_slice().iter().fold(BigRational::zero(), |s, x| s + x);
                rep.check(sum.is_one(), || format!("instance {inst}: weights sum {sum}"));
                for _ in 0..20 {
                    let y = random_point_in_v(&mut rng, dim);
                    rep.check(a.apply(&y) > ExtReal::one(), || {
                        format!("instance {inst}: a.y <= 1 at {y}")
                    });
                }
            }
            SeparationOutcome::MeetsV(w) => {
                rep.bump("meets_v");
                rep.check(in_v(&combination(&gens, w, dim)), || {
                    format!("instance {inst}: witness outside V")
                });
            }
        }
        if dim <= 3 {
            rep.bump("oracle_compared");
            let mut brute = oracle::dyadic_hull_meets_v(&gens, dim, 32);
            if brute.is_none() && !outcome.is_separated() {
                // the meeting region can be thinner than the 1/32 grid
                brute = [64, 128, 256]
                    .into_iter()
                    .find_map(|den| oracle::dyadic_hull_meets_v(&gens, dim, den));
                if brute.is_some() {
                    rep.bump("oracle_refined");
                }
            }
            rep.check(brute.is_some() == !outcome.is_separated(), || {
                let gens: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                format!(
                    "instance {inst}: oracle says meets={}, solver says separated={}, generators {}",
                    brute.is_some(),
                    outcome.is_separated(),
                    gens.join(" ")
                )
            });
        }
    }
    rep
}

fn random_simplex(rng: &mut SampleRng, n: usize) -> Vec<BigRational> {
    let mut raw: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
    if raw.iter().all(|&x| x == 0) {
        raw[rng.gen_range(0..n)] = 1;
    }
    let total: i64 = raw.iter().sum();
    raw.into_iter().map(|x| q(x, total)).collect()
}

fn finite_lin(rng: &mut SampleRng, dim: usize) -> LinFun {
    LinFun::new(sample::finite_vec(rng, dim, 6, 4))
}

/// A clause and a sublinear functional with `min clause <= phi`, built by
/// placing one branch of `phi` above a convex combination of the clause.
pub fn satisfiable_interpolation_instance(rng: &mut SampleRng) -> (Vec<LinFun>, SublinFun) {
    let dim = rng.gen_range(1..=5);
    let n = rng.gen_range(1..=4);
    let k = rng.gen_range(1..=4);
    let clause: Vec<LinFun> = (0..n).map(|_| finite_lin(rng, dim)).collect();
    let a = random_simplex(rng, n);
    let mut anchor = LinFun::combine(&a, &clause);
    if rng.gen_bool(0.5) {
        anchor = LinFun::new(anchor.coeffs.add(&sample::finite_vec(rng, dim, 4, 1)));
    }
    let mut branches: Vec<LinFun> = (1..k).map(|_| finite_lin(rng, dim)).collect();
    branches.insert(rng.gen_range(0..k), anchor);
    (clause, SublinFun::new(branches).expect("nonempty"))
}

/// A clause and `phi` with a point `y0` where every clause functional
/// exceeds every branch of `phi`.
pub fn violating_interpolation_instance(rng: &mut SampleRng) -> (Vec<LinFun>, SublinFun) {
    let dim = rng.gen_range(1..=5);
    let n = rng.gen_range(1..=4);
    let k = rng.gen_range(1..=4);
    let y0: Vec<BigRational> = random_simplex(rng, dim);
    let y0_ext = ExtVec(y0.iter().cloned().map(ExtReal::Finite).collect());
    let phi: Vec<LinFun> = (0..k).map(|_| finite_lin(rng, dim)).collect();
    let top = phi
        .iter()
        .map(|h| h.coeffs.dot(&y0_ext))
        .max()
        .unwrap()
        .as_rational()
        .cloned()
        .unwrap();
    let support: Vec<usize> = (0..dim).filter(|&j| !y0[j].is_zero()).collect();
    let clause = (0..n)
        .map(|_| {
            let mut g = finite_lin(rng, dim).rational_coeffs().unwrap();
            let j = support[rng.gen_range(0..support.len())];
            g[j] += BigRational::one();
            let at = g.iter().zip(&y0).fold(BigRational::zero(), |s, (a, b)| s + a * b);
            let factor = (&top + BigRational::one()) / at;
            LinFun::new(ExtVec(g.into_iter().map(|c| ExtReal::Finite(c * &factor)).collect()))
        })
        .collect();
    (clause, SublinFun::new(phi).expect("nonempty"))
}

/// The sandwich `min_i g_i <= sum a_i g_i <= phi` and its certificate on
/// satisfiable instances; exact violating points on violating ones.
pub fn interpolation(seed: u64, satisfiable: usize, violating: usize, points: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("interpolation", seed);
    let mut rng = sample::rng(seed);
    for inst in 0..satisfiable {
        let (clause, phi) = satisfiable_interpolation_instance(&mut rng);
        let res = match interpolate(&clause, &phi) {
            Ok(r) => r,
            Err(e) => {
                rep.check(false, || format!("instance {inst}: {e}"));
                continue;
            }
        };
        rep.check(verify_certificate(&clause, &phi, &res), || {
            format!("instance {inst}: certificate rejected")
        });
        let min = SuperlinFun::new(clause.clone()).unwrap();
        let dim = phi.dim();
        let mut ok = true;
        for _ in 0..points {
            let y = sample::ext_vec(&mut rng, dim, 8, 4, 0.1);
            let lo = min.eval(&y).unwrap();
            let mid = res.combined.eval(&y).unwrap();
            let hi = phi.eval(&y).unwrap();
            ok &= lo <= mid && mid <= hi && average_dominates_min(&clause, &res.weights, &y);
        }
        rep.check(ok, || format!("instance {inst}: sandwich fails at a sample"));
    }
    for inst in 0..violating {
        let (clause, phi) = violating_interpolation_instance(&mut rng);
        let min = SuperlinFun::new(clause.clone()).unwrap();
        match check_min_below(&min, &phi) {
            Ok(MinBelow::Violated { witness, .. }) => {
                let lo = min.eval(&witness).unwrap();
                let hi = phi.eval(&witness).unwrap();
                rep.check(lo > hi, || format!("violating {inst}: witness {witness} does not violate"));
            }
            other => rep.check(false, || format!("violating {inst}: got {other:?}")),
        }
    }
    rep
}

fn random_block(rng: &mut SampleRng, dim: usize) -> Vec<LinFun> {
    let size = rng.gen_range(1..=4);
    (0..size)
        .map(|_| LinFun::new(sample::ext_vec(rng, dim, 6, 3, 0.05)))
        .collect()
}

/// Minkowski functionals of basic opens, the open-set correspondences, and
/// convexity of `A_phi` / `U_psi`.
pub fn minkowski_correspondence(seed: u64, families: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("minkowski", seed);
    let mut rng = sample::rng(seed);
    let one = ExtReal::one();
    for fam in 0..families {
        let dim = rng.gen_range(1..=4);
        let block = random_block(&mut rng, dim);
        let open = OpenSetRep::basic(block.clone()).unwrap();
        let inf = Functional::min(SuperlinFun::new(block.clone()).unwrap());
        let sup = Functional::max(SublinFun::new(block.clone()).unwrap());
        let singles: Vec<Functional> = block.iter().cloned().map(Functional::lin).collect();
        let points: Vec<ExtVec> = (0..40)
            .map(|_| sample::ext_vec(&mut rng, dim, 8, 3, 0.1))
            .chain(sample::small_grid(dim, 30))
            .collect();

        for y in &points {
            let m = minkowski(&open, y).unwrap();
            rep.check(m == inf.eval(y).unwrap(), || format!("family {fam}: minkowski at {y}"));
            // y in rU exactly for r below the Minkowski value
            for r in scan_levels(&m) {
                let expected = r < m;
                rep.check(open.contains_scaled(&r, y).unwrap() == expected, || {
                    format!("family {fam}: scaled membership r={r} at {y}")
                });
            }
            let in_all = singles.iter().all(|s| member_u(s, y).unwrap());
            let in_any = singles.iter().any(|s| member_u(s, y).unwrap());
            rep.check(member_u(&inf, y).unwrap() == in_all, || format!("family {fam}: meet at {y}"));
            rep.check(member_u(&sup, y).unwrap() == in_any, || format!("family {fam}: join at {y}"));
            rep.check(open.contains(y).unwrap() == member_u(&inf, y).unwrap(), || {
                format!("family {fam}: U_F vs U_min at {y}")
            });
            for f in [&inf, &sup] {
                for r in [ExtReal::zero(), ExtReal::ratio(1, 2), ExtReal::from(3), ExtReal::Infinity] {
                    rep.check(f.eval(&y.scale(&r)).unwrap() == &r * &f.eval(y).unwrap(), || {
                        format!("family {fam}: homogeneity r={r} at {y}")
                    });
                }
            }
        }

        // order vs inclusion, on finite coefficients where the order is decided exactly
        if block.iter().all(|b| b.coeffs.is_finite()) {
            let other = Functional::lin(finite_lin(&mut rng, dim));
            for (phi, psi) in [(&inf, &sup), (&sup, &inf), (&other, &sup), (&inf, &other)] {
                match leq_functional(phi, psi, 0).unwrap() {
                    Comparison::Holds => {
                        let ok = points
                            .iter()
                            .all(|y| !member_u(phi, y).unwrap() || member_u(psi, y).unwrap());
                        rep.check(ok, || format!("family {fam}: U inclusion fails under phi <= psi"));
                    }
                    Comparison::Violated { witness } => {
                        // scale the witness into U_phi \ U_psi
                        let a = phi.eval(&witness).unwrap();
                        let b = psi.eval(&witness).unwrap();
                        let sum = (&a + &b).as_rational().cloned().unwrap();
                        let t = ExtReal::Finite(BigRational::from_integer(2.into()) / sum);
                        let z = witness.scale(&t);
                        rep.check(member_u(phi, &z).unwrap() && !member_u(psi, &z).unwrap(), || {
                            format!("family {fam}: no separating point from {witness}")
                        });
                    }
                    Comparison::NotRefuted { .. } => rep.check(false, || "unexpected sampling".into()),
                }
            }
        }

        // A_sup and U_inf are convex
        let ts: Vec<ExtReal> = (0..=8).map(|k| ExtReal::ratio(k, 8)).collect();
        let a_pts: Vec<ExtVec> = points
            .iter()
            .filter_map(|y| normalize(&sup, y, &one))
            .take(8)
            .collect();
        let u_pts: Vec<ExtVec> = points
            .iter()
            .filter_map(|y| normalize(&inf, y, &ExtReal::from(2)))
            .take(8)
            .collect();
        for (pts, f, want_a) in [(&a_pts, &sup, true), (&u_pts, &inf, false)] {
            for y in pts.iter() {
                for z in pts.iter() {
                    for t in &ts {
                        let s = y.scale(t).add(&z.scale(&complement(t)));
                        let ok = if want_a {
                            member_a(f, &s).unwrap()
                        } else {
                            member_u(f, &s).unwrap()
                        };
                        rep.check(ok, || format!("family {fam}: convexity at t={t}"));
                    }
                }
            }
        }
    }
    rep
}

fn complement(t: &ExtReal) -> ExtReal {
    ExtReal::one().sub_partial(t).expect("t in [0, 1]")
}

/// Rescales `y` so that `f(y) = level`, when `0 < f(y) < inf`.
fn normalize(f: &Functional, y: &ExtVec, level: &ExtReal) -> Option<ExtVec> {
    let v = f.eval(y).ok()?;
    let v = v.as_rational()?;
    if v.is_zero() {
        return None;
    }
    let lv = level.as_rational()?;
    Some(y.scale(&ExtReal::Finite(lv / v)))
}

fn scan_levels(m: &ExtReal) -> Vec<ExtReal> {
    match m {
        ExtReal::Infinity => vec![ExtReal::from(1), ExtReal::from(1000)],
        ExtReal::Finite(v) if v.is_zero() => vec![ExtReal::ratio(1, 1000), ExtReal::one()],
        ExtReal::Finite(v) => {
            let f = |r: BigRational| ExtReal::Finite(r);
            vec![
                f(v * q(1, 2)),
                f(v * q(999, 1000)),
                m.clone(),
                f(v * q(1001, 1000)),
            ]
        }
    }
}

fn random_coefficients(rng: &mut SampleRng, poset: &FinitePoset) -> Vec<ExtReal> {
    let raw: Vec<ExtReal> = (0..poset.size())
        .map(|_| sample::ext_real(rng, 4, 3, 0.1))
        .collect();
    if rng.gen_bool(0.5) {
        // monotone closure: f(x) = max over y <= x of raw(y)
        (0..poset.size())
            .map(|x| {
                (0..poset.size())
                    .filter(|&y| poset.leq(y, x))
                    .map(|y| raw[y].clone())
                    .max()
                    .unwrap()
            })
            .collect()
    } else {
        raw
    }
}

/// Recovery of the representing function on every poset with at most five
/// elements.
pub fn schroder_simpson(seed: u64, per_poset: usize, valuations: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("schroder-simpson", seed);
    let mut rng = sample::rng(seed);
    for n in 1..=5 {
        for (pi, poset) in finspace::posets_up_to_iso(n).into_iter().enumerate() {
            let poset = Arc::new(poset);
            let mut recovered: Vec<LscFun> = Vec::new();
            for _ in 0..per_poset {
                let c = random_coefficients(&mut rng, &poset);
                let phi = DualFunctionalRep::new(c.clone());
                let label = || format!("poset {n}/{pi}, c = {}", fmt_values(&c));
                match (ss_recover(&phi, &poset), lsc_violation(&c, &poset)) {
                    (Ok(f), None) => {
                        rep.bump("monotone");
                        rep.check(f.values() == &c[..], || format!("{}: wrong f", label()));
                        let mut ok = true;
                        for _ in 0..valuations {
                            let mu = random_valuation(&mut rng, &poset, 0.1);
                            ok &= phi.apply(&mu).unwrap() == mu.eval(&f).unwrap();
                        }
                        rep.check(ok, || format!("{}: phi(mu) != mu(f)", label()));
                        recovered.push(f);
                    }
                    (Err(ValuationError::NotLsc(x, y)), Some(_)) => {
                        rep.bump("not_lsc");
                        rep.check(x != y && poset.leq(x, y) && c[x] > c[y], || {
                            format!("{}: bad witness ({x}, {y})", label())
                        });
                    }
                    (got, expected) => rep.check(false, || {
                        format!("{}: got {got:?}, violation {expected:?}", label())
                    }),
                }
            }
            // distinct monotone functions are told apart by a Dirac valuation
            for (i, f) in recovered.iter().enumerate() {
                for g in &recovered[i + 1..] {
                    if f != g {
                        let separated = (0..n).any(|x| {
                            let d = SimpleValuation::dirac(poset.clone(), x);
                            d.eval(f).unwrap() != d.eval(g).unwrap()
                        });
                        rep.check(separated, || format!("poset {n}/{pi}: Dirac separation"));
                    }
                }
            }
        }
    }
    rep
}

fn fmt_values(v: &[ExtReal]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Moebius round trips on every poset with at most four elements and
/// weights in `{0, 1, 2, 3}`; on posets with at most three elements, every
/// table of open-set values in `{0, 1, 2, 3}` is inverted or rejected
/// consistently with the valuation laws.
pub fn mobius_round_trips() -> SuiteReport {
    let mut rep = SuiteReport::new("mobius", 0);
    let levels: Vec<ExtReal> = (0..4).map(ExtReal::from).collect();
    for n in 1..=4 {
        for (pi, poset) in finspace::posets_up_to_iso(n).into_iter().enumerate() {
            let poset = Arc::new(poset);
            for idx in 0..4usize.pow(n as u32) {
                let weights: Vec<ExtReal> =
                    (0..n).map(|x| levels[(idx / 4usize.pow(x as u32)) % 4].clone()).collect();
                let mu = SimpleValuation::new(poset.clone(), weights).unwrap();
                let nu = mu.to_opens(finspace::DEFAULT_OPEN_LIMIT).unwrap();
                rep.check(nu.check_laws().is_ok(), || format!("poset {n}/{pi}: induced table not a valuation"));
                match nu.from_opens() {
                    Ok(back) => {
                        rep.check(back == mu, || format!("poset {n}/{pi}: mu round trip"));
                        let again = back.to_opens(finspace::DEFAULT_OPEN_LIMIT).unwrap();
                        rep.check(again == nu, || format!("poset {n}/{pi}: nu round trip"));
                    }
                    Err(e) => rep.check(false, || format!("poset {n}/{pi}: {e}")),
                }
            }
            if n <= 3 {
                exhaustive_tables(&mut rep, &poset, &levels, n, pi);
            }
        }
    }
    rep
}

fn exhaustive_tables(rep: &mut SuiteReport, poset: &Arc<FinitePoset>, levels: &[ExtReal], n: usize, pi: usize) {
    use crate::valuations::ValuationOnOpens;
    let opens: Vec<OpenSet> = poset
        .all_opens(finspace::DEFAULT_OPEN_LIMIT)
        .unwrap()
        .into_iter()
        .filter(|u| !u.is_empty())
        .collect();
    let total = 4usize.pow(opens.len() as u32);
    for idx in 0..total {
        let table: BTreeMap<OpenSet, ExtReal> = opens
            .iter()
            .enumerate()
            .map(|(k, u)| (*u, levels[(idx / 4usize.pow(k as u32)) % 4].clone()))
            .collect();
        let nu = ValuationOnOpens::new(poset.clone(), table).unwrap();
        let lawful = nu.check_laws().is_ok();
        match nu.from_opens() {
            Ok(mu) => {
                rep.bump("valid_tables");
                let back = mu.to_opens(finspace::DEFAULT_OPEN_LIMIT).unwrap();
                rep.check(lawful && back.table().iter().filter(|(u, _)| !u.is_empty()).eq(nu.table().iter()), || {
                    format!("poset {n}/{pi}: table {idx} accepted but not reproduced")
                });
            }
            Err(_) => {
                rep.bump("rejected_tables");
                rep.check(!lawful, || format!("poset {n}/{pi}: lawful table {idx} rejected"));
            }
        }
    }
}

/// The two-point specialization example: `(1,1) <= (2,0)` for the cone
/// generated by `(1,0), (1,1)`, while the second projection reverses it.
pub fn specialization_example() -> SuiteReport {
    let mut rep = SuiteReport::new("example", 0);
    let gens = [LinFun::from_integers(&[1, 0]), LinFun::from_integers(&[1, 1])];
    let y = ExtVec::from_integers(&[1, 1]);
    let y2 = ExtVec::from_integers(&[2, 0]);
    let pi2 = LinFun::from_integers(&[0, 1]);
    rep.check(spec_leq(&y, &y2, &gens).unwrap(), || "(1,1) <= (2,0) fails".into());
    let a = pi2.eval(&y).unwrap();
    let b = pi2.eval(&y2).unwrap();
    rep.check(a == ExtReal::one() && b == ExtReal::zero() && a > b, || {
        format!("pi2 values {a}, {b}")
    });
    rep
}

/// Directedness of the admissible grid functions on every poset with at
/// most four elements, grid denominator 2 and cap 2.
pub fn lemma1_shadow(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("lemma1", seed);
    let mut rng = sample::rng(seed);
    for n in 1..=4 {
        for (pi, poset) in finspace::posets_up_to_iso(n).into_iter().enumerate() {
            let poset = Arc::new(poset);
            for _ in 0..3 {
                let c = random_coefficients(&mut rng, &poset);
                let phi = DualFunctionalRep::new(c.clone());
                let sub_seed = rng.gen();
                match lemma1_directedness_check(&phi, &poset, 2, &ExtReal::from(2), 200, sub_seed) {
                    Ok(r) => rep.check(r.directed, || {
                        format!("poset {n}/{pi}, c = {}: counterexample {:?}", fmt_values(&c), r.counterexample)
                    }),
                    Err(e) => rep.check(false, || format!("poset {n}/{pi}: {e}")),
                }
            }
        }
    }
    rep
}

/// Convenience for callers that only need simplex weights from a suite.
pub fn uniform_weights(n: usize) -> SeparationWeights {
    SeparationWeights::new(vec![q(1, n as i64); n]).expect("uniform simplex")
}
