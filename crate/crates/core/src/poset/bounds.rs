//! Closed-form bounds on line counts.

use crate::error::{Error, Result};

fn choose2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

/// Minimum of `Σ C(|A_i|, 2)` over all ways of splitting `n` points into
/// `r` parts: `r·C(⌊n/r⌋, 2) + ⌊n/r⌋·(n mod r)`.
pub fn lemma1_bound(n: u64, r: u64) -> Result<u64> {
    if r < 1 || r > n {
        return Err(Error::Domain(format!("lemma1_bound needs 1 <= r <= n, got n = {n}, r = {r}")));
    }
    let q = n / r;
    Ok(r * choose2(q) + q * (n % r))
}

/// Lower bound on the number of lines of a poset on `n` points of height
/// `h >= 2` with no universal line: `h·C(⌊n/h⌋, 2) + ⌊n/h⌋·(n mod h) + h`.
pub fn dbe_bound(n: u64, h: u64) -> Result<u64> {
    if h < 2 || h > n {
        return Err(Error::Domain(format!("dbe_bound needs 2 <= H <= n, got n = {n}, H = {h}")));
    }
    Ok(lemma1_bound(n, h)? + h)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive minimum of Σ C(part, 2) over compositions of `n` into
    /// `r` nonnegative parts.
    fn composition_minimum(n: u64, r: u64) -> u64 {
        fn go(left: u64, parts: u64, acc: u64, best: &mut u64) {
            if parts == 1 {
                *best = (*best).min(acc + left * left.saturating_sub(1) / 2);
                return;
            }
            for p in 0..=left {
                go(left - p, parts - 1, acc + p * p.saturating_sub(1) / 2, best);
            }
        }
        let mut best = u64::MAX;
        go(n, r, 0, &mut best);
        best
    }

    #[test]
    fn examples() {
        assert_eq!(dbe_bound(6, 3).unwrap(), 6);
        assert_eq!(dbe_bound(10, 2).unwrap(), 22);
        assert_eq!(dbe_bound(9, 2).unwrap(), 18);
        assert_eq!(lemma1_bound(5, 2).unwrap(), 4);
        assert_eq!(lemma1_bound(6, 3).unwrap(), 3);
        assert_eq!(lemma1_bound(7, 3).unwrap(), 5);
        assert_eq!(composition_minimum(7, 3), 5);
        assert_eq!(lemma1_bound(4, 2).unwrap(), 2);
    }

    #[test]
    fn domain_errors() {
        assert!(dbe_bound(5, 1).is_err());
        assert!(dbe_bound(5, 6).is_err());
        assert!(lemma1_bound(5, 0).is_err());
        assert!(lemma1_bound(3, 4).is_err());
    }

    #[test]
    fn lemma1_matches_composition_search() {
        for n in 1..=12 {
            for r in 1..=n {
                assert_eq!(lemma1_bound(n, r).unwrap(), composition_minimum(n, r), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn bound_at_least_n_and_equal_from_half_up() {
        for n in 2..=60u64 {
            for h in 2..=n {
                let b = dbe_bound(n, h).unwrap();
                assert!(b >= n);
                // equality holds exactly when h >= ceil(n/2)
                assert_eq!(b == n, h >= n.div_ceil(2), "n={n} h={h}");
            }
        }
    }
}
