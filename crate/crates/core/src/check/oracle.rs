//! Brute-force reference answers, computed without the LP.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::convex_sep::ExtVec;
use crate::extreal::ExtReal;

/// Integer image of one generator: `None` for an infinite coordinate,
/// otherwise the value times the common denominator.
type ScaledPoint = Vec<Option<i128>>;

fn scale(generators: &[ExtVec]) -> Option<(Vec<ScaledPoint>, i128)> {
    let mut lcm = BigInt::one();
    for g in generators {
        for x in g.iter() {
            if let Some(d) = x.denom() {
                lcm = lcm.lcm(d);
            }
        }
    }
    let pts = generators
        .iter()
        .map(|g| {
            g.iter()
                .map(|x| match x {
                    ExtReal::Infinity => Some(None),
                    ExtReal::Finite(q) => (q.numer() * (&lcm / q.denom())).to_i128().map(Some),
                })
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    Some((pts, lcm.to_i128()?))
}

/// Searches convex combinations with coefficients `k / den` over every
/// subset of at most `dim + 1` generators for a point in the open corner.
/// Subsets of that size suffice by Caratheodory's theorem (after truncating
/// infinite coordinates at a large finite value).
pub fn dyadic_hull_meets_v(generators: &[ExtVec], dim: usize, den: u32) -> Option<Vec<(usize, u32)>> {
    let (pts, scale) = scale(generators).expect("instance fits in i128");
    let size = (dim + 1).min(pts.len());
    let threshold = i128::from(den) * scale;
    let mut found = None;
    for_each_subset(pts.len(), size, &mut |subset| {
        for_each_composition(den, subset.len(), &mut |coeffs| {
            let inside = (0..dim).all(|j| {
                let mut total: i128 = 0;
                for (&g, &c) in subset.iter().zip(coeffs) {
                    if c == 0 {
                        continue;
                    }
                    match pts[g][j] {
                        None => return true,
                        Some(v) => total += i128::from(c) * v,
                    }
                }
                total > threshold
            });
            if inside {
                found = Some(
                    subset
                        .iter()
                        .zip(coeffs)
                        .filter(|(_, &c)| c > 0)
                        .map(|(&g, &c)| (g, c))
                        .collect(),
                );
            }
            found.is_some()
        });
        found.is_some()
    });
    found
}

/// Calls `f` on each `k`-subset of `0..n` until it returns true.
fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            cur.push(i);
            if rec(i + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

/// Calls `f` on each way to write `total` as `parts` nonnegative summands
/// until it returns true.
fn for_each_composition(total: u32, parts: usize, f: &mut dyn FnMut(&[u32]) -> bool) {
    fn rec(left: u32, parts: usize, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if cur.len() + 1 == parts {
            cur.push(left);
            let stop = f(cur);
            cur.pop();
            return stop;
        }
        for c in 0..=left {
            cur.push(c);
            if rec(left - c, parts, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    if parts > 0 {
        rec(total, parts, &mut Vec::with_capacity(parts), f);
    }
}

/// Open-preimage form of lower semicontinuity: for every threshold `r` among
/// the function's finite values, `{ x : f(x) > r }` must be an up-set.
pub fn lsc_by_preimages(values: &[ExtReal], up: impl Fn(usize, usize) -> bool) -> bool {
    let n = values.len();
    let mut thresholds: Vec<&ExtReal> = values.iter().filter(|v| v.is_finite()).collect();
    let zero = ExtReal::zero();
    thresholds.push(&zero);
    thresholds.iter().all(|r| {
        let above: Vec<bool> = values.iter().map(|v| v > *r).collect();
        (0..n).all(|x| !above[x] || (0..n).all(|y| !up(x, y) || above[y]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_count() {
        let mut count = 0;
        for_each_composition(4, 3, &mut |_| {
            count += 1;
            false
        });
        assert_eq!(count, 15);
    }

    #[test]
    fn subsets_count() {
        let mut count = 0;
        for_each_subset(6, 3, &mut |_| {
            count += 1;
            false
        });
        assert_eq!(count, 20);
    }

    #[test]
    fn reference_examples() {
        let sep = [ExtVec::from_integers(&[2, 0]), ExtVec::from_integers(&[0, 2])];
        assert!(dyadic_hull_meets_v(&sep, 2, 32).is_none());
        let meet = [ExtVec::from_integers(&[3, 0]), ExtVec::from_integers(&[0, 3])];
        // first hit in enumeration order: 3 * 11 > 32 and 3 * 21 > 32
        assert_eq!(dyadic_hull_meets_v(&meet, 2, 32), Some(vec![(0, 11), (1, 21)]));
    }
}
