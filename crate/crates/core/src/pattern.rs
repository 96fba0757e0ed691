//! Backtracking occurrence search shared by ordinary and affine hosts.
//!
//! A pattern entry placed at step `j` only has to respect the two
//! previously placed entries that bracket it in value; if every step does,
//! the whole subsequence is order-isomorphic to the pattern.

use std::ops::RangeInclusive;

#[derive(Debug, Clone)]
pub(crate) struct Matcher {
    len: usize,
    /// Earlier pattern position holding the largest smaller value.
    below: Vec<Option<usize>>,
    /// Earlier pattern position holding the smallest larger value.
    above: Vec<Option<usize>>,
}

impl Matcher {
    pub(crate) fn new(pattern: &[u32]) -> Self {
        let mut below = Vec::with_capacity(pattern.len());
        let mut above = Vec::with_capacity(pattern.len());
        for (j, &v) in pattern.iter().enumerate() {
            let lo = (0..j).filter(|&t| pattern[t] < v).max_by_key(|&t| pattern[t]);
            let hi = (0..j).filter(|&t| pattern[t] > v).min_by_key(|&t| pattern[t]);
            below.push(lo);
            above.push(hi);
        }
        Matcher { len: pattern.len(), below, above }
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    /// Lexicographically least occurrence. `candidates(j, prev)` yields the
    /// admissible host indices for pattern position `j` given the index
    /// chosen for position `j - 1`; `value` evaluates the host.
    pub(crate) fn find<C, V>(&self, candidates: C, value: V) -> Option<Vec<i64>>
    where
        C: Fn(usize, Option<i64>) -> RangeInclusive<i64>,
        V: Fn(i64) -> i64,
    {
        let mut idx = Vec::with_capacity(self.len);
        let mut vals = Vec::with_capacity(self.len);
        if self.descend(&candidates, &value, &mut idx, &mut vals) {
            Some(idx)
        } else {
            None
        }
    }

    fn descend<C, V>(&self, candidates: &C, value: &V, idx: &mut Vec<i64>, vals: &mut Vec<i64>) -> bool
    where
        C: Fn(usize, Option<i64>) -> RangeInclusive<i64>,
        V: Fn(i64) -> i64,
    {
        let j = idx.len();
        if j == self.len {
            return true;
        }
        let lo = self.below[j].map(|t| vals[t]);
        let hi = self.above[j].map(|t| vals[t]);
        for i in candidates(j, idx.last().copied()) {
            let v = value(i);
            if lo.is_some_and(|l| v <= l) || hi.is_some_and(|h| v >= h) {
                continue;
            }
            idx.push(i);
            vals.push(v);
            if self.descend(candidates, value, idx, vals) {
                return true;
            }
            idx.pop();
            vals.pop();
        }
        false
    }
}

/// Occurrence in a finite sequence of distinct integers (0-based indices).
pub(crate) fn find_in_slice(m: &Matcher, host: &[i64]) -> Option<Vec<i64>> {
    let k = m.len() as i64;
    let n = host.len() as i64;
    if k > n {
        return None;
    }
    m.find(
        |j, prev| {
            let start = prev.map_or(0, |p| p + 1);
            start..=(n - k + j as i64)
        },
        |i| host[i as usize],
    )
}

/// Whether `host` has an occurrence whose last entry is the last element.
pub(crate) fn ends_with_occurrence(m: &Matcher, host: &[i64]) -> bool {
    let k = m.len();
    let n = host.len() as i64;
    if k == 0 {
        return true;
    }
    if k as i64 > n {
        return false;
    }
    m.find(
        |j, prev| {
            if j + 1 == k {
                let last = n - 1;
                match prev {
                    #[allow(clippy::reversed_empty_ranges)]
                    Some(p) if p >= last => 1..=0,
                    _ => last..=last,
                }
            } else {
                let start = prev.map_or(0, |p| p + 1);
                start..=(n - 1 - (k - j - 1) as i64)
            }
        },
        |i| host[i as usize],
    )
    .is_some()
}
