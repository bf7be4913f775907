//! Closed-form count of crossing-free interior edge sets of a double chain.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::series::binomial;

/// `C(a, b)` with the convention that a negative index gives zero.
fn binom(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || b > a {
        BigInt::zero()
    } else {
        binomial(a as u64, b as u64)
    }
}

/// Non-empty crossing-free sets of `k` interior edges on a double chain
/// with `n` points per chain.
///
/// Each set is keyed by a matching of `l` edges whose first upper endpoint
/// is `u_i` and whose last lower endpoint is `l_{n-j+1}`; the remaining
/// `k - l` edges are any subset of the optional edges left over.
pub fn interior_forest_count(n: usize, k: usize) -> BigInt {
    let (n, k) = (n as i64, k as i64);
    let mut total = BigInt::zero();
    for l in 1..=k.min(n) {
        for i in 1..=n - l + 1 {
            let left = binom(n - i, l - 1);
            if left.is_zero() {
                continue;
            }
            for j in 1..=n - l + 1 {
                total += &left * binom(n - j, l - 1) * binom(2 * n - l - i - j + 1, k - l);
            }
        }
    }
    total
}

/// `interior_forest_count(n, k)` for `k = 1..=2n-1`.
pub fn interior_forest_census(n: usize) -> Vec<BigInt> {
    (1..2 * n).map(|k| interior_forest_count(n, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(interior_forest_count(1, 1), BigInt::from(1));
        let c: Vec<BigInt> = interior_forest_census(2);
        assert_eq!(c, vec![BigInt::from(4), BigInt::from(5), BigInt::from(2)]);
    }

    #[test]
    fn single_edges_are_all_pairs() {
        for n in 1..8 {
            assert_eq!(interior_forest_count(n, 1), BigInt::from(n * n));
        }
    }
}
