#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use conedual::convex_sep::ExtVec;
use conedual::extreal::ExtReal;
use conedual::finspace::{posets_up_to_iso, FinitePoset};
use conedual::functionals::LinFun;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn finite() -> impl Strategy<Value = ExtReal> {
    (0u64..=40, 1u64..=8).prop_map(|(n, d)| ExtReal::ratio(n, d))
}

/// Small rationals with infinity about one time in eight.
pub fn ext() -> impl Strategy<Value = ExtReal> {
    prop_oneof![7 => finite(), 1 => Just(ExtReal::Infinity)]
}

pub fn ext_vec(dim: usize) -> impl Strategy<Value = ExtVec> {
    prop::collection::vec(ext(), dim).prop_map(ExtVec)
}

pub fn finite_vec(dim: usize) -> impl Strategy<Value = ExtVec> {
    prop::collection::vec(finite(), dim).prop_map(ExtVec)
}

pub fn finite_lin(dim: usize) -> impl Strategy<Value = LinFun> {
    finite_vec(dim).prop_map(LinFun::new)
}

pub fn lin(xs: &[u64]) -> LinFun {
    LinFun::from_integers(xs)
}

pub fn v(xs: &[u64]) -> ExtVec {
    ExtVec::from_integers(xs)
}

/// Posets on `n` elements up to isomorphism, enumerated once.
pub fn classes(n: usize) -> &'static [Arc<FinitePoset>] {
    static ALL: OnceLock<Vec<Vec<Arc<FinitePoset>>>> = OnceLock::new();
    &ALL.get_or_init(|| {
        (1..=6)
            .map(|n| posets_up_to_iso(n).into_iter().map(Arc::new).collect())
            .collect()
    })[n - 1]
}

pub fn poset(max: usize) -> impl Strategy<Value = Arc<FinitePoset>> {
    (1..=max).prop_flat_map(|n| prop::sample::select(classes(n)))
}
