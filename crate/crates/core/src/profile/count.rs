use std::collections::HashSet;

use crate::error::{invalid, Error, Result};

/// Largest string space the exhaustive counters will walk.
pub const ENUMERATION_BUDGET: u64 = 1 << 20;

/// Number of distinct ℓ-profiles over all q-ary strings of length n, by exhaustion.
pub fn count_distinct_profiles(q: usize, ell: usize, n: usize) -> Result<u64> {
    if q < 2 || ell == 0 || ell > n {
        return invalid(format!("need q >= 2 and 1 <= ell <= n (q={q}, ell={ell}, n={n})"));
    }
    let space = (q as u64)
        .checked_pow(n as u32)
        .filter(|&s| s <= ENUMERATION_BUDGET)
        .ok_or_else(|| Error::Resource(format!("{q}^{n} strings exceed the budget of {ENUMERATION_BUDGET}")))?;
    let dim = q.pow(ell as u32);
    let window = q.pow(ell as u32 - 1);
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    let mut digits = vec![0usize; n];
    let mut counts = vec![0u16; dim];
    for _ in 0..space {
        counts.iter_mut().for_each(|c| *c = 0);
        let mut idx = 0;
        for (i, &d) in digits.iter().enumerate() {
            idx = (idx % window) * q + d;
            if i + 1 >= ell {
                counts[idx] += 1;
            }
        }
        seen.insert(counts.clone());
        // Increment the base-q odometer.
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
    }
    Ok(seen.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::{profile, QaryString};

    #[test]
    fn ell_one_counts_weights() {
        for n in 1..=12 {
            assert_eq!(count_distinct_profiles(2, 1, n).unwrap(), n as u64 + 1);
        }
    }

    #[test]
    fn matches_profile_based_enumeration() {
        let n = 4;
        let mut distinct = HashSet::new();
        for v in 0..16u32 {
            let x = QaryString::binary(&(0..n).map(|i| ((v >> i) & 1) as u8).collect::<Vec<_>>()).unwrap();
            distinct.insert(profile(&x, 2).unwrap());
        }
        assert_eq!(count_distinct_profiles(2, 2, 4).unwrap(), distinct.len() as u64);
    }

    #[test]
    fn dna_counts() {
        // 4^3 strings, ℓ = 1: compositions of 3 into 4 parts = C(6,3) = 20.
        assert_eq!(count_distinct_profiles(4, 1, 3).unwrap(), 20);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(count_distinct_profiles(2, 2, 21), Err(Error::Resource(_))));
        assert!(matches!(count_distinct_profiles(4, 2, 11), Err(Error::Resource(_))));
        assert!(count_distinct_profiles(2, 5, 4).is_err());
    }
}
