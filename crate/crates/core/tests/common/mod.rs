//! Oracles written straight from the definitions, independent of the
//! library's algorithms.

#![allow(dead_code)]

use num_bigint::BigUint;

/// `ω(i)` for the periodic extension of a window.
pub fn apply(window: &[i64], i: i64) -> i64 {
    let n = window.len() as i64;
    let q = (i - 1).div_euclid(n);
    let r = (i - 1).rem_euclid(n);
    window[r as usize] + q * n
}

/// Every window with `|ω(i) − i| < n`, residues distinct mod `n` and sum
/// `n(n+1)/2`, in lexicographic order.
pub fn bounded_windows(n: usize) -> Vec<Vec<i64>> {
    fn go(n: i64, i: i64, used: &mut Vec<bool>, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i > n {
            if cur.iter().sum::<i64>() == n * (n + 1) / 2 {
                out.push(cur.clone());
            }
            return;
        }
        for v in (i - n + 1)..=(i + n - 1) {
            let r = v.rem_euclid(n) as usize;
            if used[r] {
                continue;
            }
            used[r] = true;
            cur.push(v);
            go(n, i + 1, used, cur, out);
            cur.pop();
            used[r] = false;
        }
    }
    let mut out = Vec::new();
    go(n as i64, 1, &mut vec![false; n], &mut Vec::new(), &mut out);
    out
}

pub fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u8);
    }
    let mut acc = BigUint::from(1u8);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Relative order of `vals` as 1-based ranks.
pub fn pattern_of(vals: &[i64]) -> Vec<u32> {
    vals.iter().map(|v| vals.iter().filter(|w| *w <= v).count() as u32).collect()
}

/// Containment of `tau` in the affine permutation, searching every
/// increasing index tuple with first index in `1..=n` and span below `span`.
pub fn contains_wide(window: &[i64], tau: &[u32], span: i64) -> bool {
    fn go(window: &[i64], tau: &[u32], span: i64, idx: &mut Vec<i64>) -> bool {
        if idx.len() == tau.len() {
            let vals: Vec<i64> = idx.iter().map(|&i| apply(window, i)).collect();
            return pattern_of(&vals) == tau;
        }
        let range = match idx.last() {
            None => 1..=window.len() as i64,
            Some(&p) => (p + 1)..=(idx[0] + span),
        };
        for i in range {
            idx.push(i);
            if go(window, tau, span, idx) {
                return true;
            }
            idx.pop();
        }
        false
    }
    tau.is_empty() || go(window, tau, span, &mut Vec::new())
}

/// Every permutation of `1..=n` containing no pattern from `avoid`, by
/// filtering all `n!` permutations through subsequence checks.
pub fn ordinary_avoiders(n: usize, avoid: &[Vec<u32>]) -> Vec<Vec<u32>> {
    use itertools::Itertools;
    (1..=n as u32)
        .permutations(n)
        .filter(|p| {
            avoid.iter().all(|t| {
                !(0..n).combinations(t.len()).any(|c| {
                    let vals: Vec<i64> = c.iter().map(|&i| p[i] as i64).collect();
                    pattern_of(&vals) == *t
                })
            })
        })
        .collect()
}
