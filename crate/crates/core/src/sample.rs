//! Seeded generators for extended reals and points, shared by the
//! semi-decision procedures and the property suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::convex_sep::ExtVec;
use crate::extreal::ExtReal;

pub type SampleRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational `n/d` with `1 <= d <= max_den` and value at most `max_value`.
pub fn rational(rng: &mut SampleRng, max_den: u64, max_value: u64) -> ExtReal {
    let d = rng.gen_range(1..=max_den);
    let n = rng.gen_range(0..=max_value * d);
    ExtReal::ratio(n, d)
}

/// Like [`rational`], but infinite with probability `p_inf`.
pub fn ext_real(rng: &mut SampleRng, max_den: u64, max_value: u64, p_inf: f64) -> ExtReal {
    if rng.gen_bool(p_inf) {
        ExtReal::Infinity
    } else {
        rational(rng, max_den, max_value)
    }
}

pub fn ext_vec(rng: &mut SampleRng, dim: usize, max_den: u64, max_value: u64, p_inf: f64) -> ExtVec {
    ExtVec((0..dim).map(|_| ext_real(rng, max_den, max_value, p_inf)).collect())
}

pub fn finite_vec(rng: &mut SampleRng, dim: usize, max_den: u64, max_value: u64) -> ExtVec {
    ext_vec(rng, dim, max_den, max_value, 0.0)
}

/// The grid `{0, 1/2, 1, 2, inf}^dim`, truncated to `limit` points.
pub fn small_grid(dim: usize, limit: usize) -> Vec<ExtVec> {
    let values = [
        ExtReal::zero(),
        ExtReal::ratio(1, 2),
        ExtReal::one(),
        ExtReal::from(2),
        ExtReal::Infinity,
    ];
    let mut out = Vec::new();
    let mut idx = vec![0usize; dim];
    loop {
        if out.len() >= limit {
            break;
        }
        out.push(ExtVec(idx.iter().map(|&i| values[i].clone()).collect()));
        let mut k = 0;
        loop {
            if k == dim {
                return out;
            }
            idx[k] += 1;
            if idx[k] < values.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
    out
}
