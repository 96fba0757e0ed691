//! Ordinary permutations of `1..=n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{self, Matcher};

/// A permutation of `1..=n` stored as its one-line value sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Perm {
    values: Vec<u32>,
}

impl Perm {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation { n, reason: format!("value {v} out of range") });
            }
            if seen[v] {
                return Err(Error::InvalidPermutation { n, reason: format!("value {v} repeated") });
            }
            seen[v] = true;
        }
        Ok(Perm { values })
    }

    pub(crate) fn from_values_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Perm::new(values.clone()).is_ok());
        Perm { values }
    }

    pub fn empty() -> Self {
        Perm { values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Perm { values: (1..=n as u32).collect() }
    }

    /// The permutation order-isomorphic to a sequence of distinct integers.
    pub fn flatten(seq: &[i64]) -> Self {
        let mut order: Vec<usize> = (0..seq.len()).collect();
        order.sort_by_key(|&i| seq[i]);
        let mut values = vec![0u32; seq.len()];
        for (rank, &i) in order.iter().enumerate() {
            values[i] = rank as u32 + 1;
        }
        Perm::from_values_unchecked(values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `π(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    pub(crate) fn as_i64(&self) -> Vec<i64> {
        self.values.iter().map(|&v| v as i64).collect()
    }

    /// `self ⊕ other`: `other` placed diagonally above and right of `self`.
    pub fn direct_sum(&self, other: &Perm) -> Perm {
        let shift = self.len() as u32;
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|&v| v + shift));
        Perm { values }
    }

    /// Positions (1-based) after which the prefix is closed under values,
    /// i.e. the right ends of the sum blocks.
    fn block_ends(&self) -> Vec<usize> {
        let mut ends = Vec::new();
        let mut max = 0;
        for (i, &v) in self.values.iter().enumerate() {
            max = max.max(v as usize);
            if max == i + 1 {
                ends.push(i + 1);
            }
        }
        ends
    }

    pub fn first_block_size(&self) -> usize {
        self.block_ends().first().copied().unwrap_or(0)
    }

    pub fn block_count(&self) -> usize {
        self.block_ends().len()
    }

    pub fn is_indecomposable(&self) -> bool {
        !self.is_empty() && self.first_block_size() == self.len()
    }

    /// Smallest `j` such that `self` is the `(n/j)`-fold sum of one
    /// permutation of size `j`.
    pub fn period(&self) -> usize {
        let n = self.len();
        let ends = self.block_ends();
        (1..=n)
            .filter(|j| n.is_multiple_of(*j) && ends.contains(j))
            .find(|&j| (j..n).all(|i| self.values[i] == self.values[i - j] + j as u32))
            .unwrap_or(n)
    }

    pub fn sum_blocks(&self) -> Result<BlockProfile> {
        if self.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        let ends = self.block_ends();
        let mut blocks = Vec::with_capacity(ends.len());
        let mut start = 0;
        for &end in &ends {
            let vals = self.values[start..end].iter().map(|&v| v - start as u32).collect();
            blocks.push(Perm::from_values_unchecked(vals));
            start = end;
        }
        Ok(BlockProfile { first_block_size: ends[0], block_count: ends.len(), period: self.period(), blocks })
    }

    /// Inversion pairs `(i, j)` with `i < j` and `π(i) > π(j)`, 1-based,
    /// in lexicographic order.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.values[i] > self.values[j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn exc_stats(&self) -> ExcStats {
        let mut excedances = 0;
        let mut fixed_points = 0;
        for (i, &v) in self.values.iter().enumerate() {
            let pos = i as u32 + 1;
            if v > pos {
                excedances += 1;
            } else if v == pos {
                fixed_points += 1;
            }
        }
        ExcStats { excedances, fixed_points }
    }

    /// Whether `self` contains `pattern`.
    pub fn contains(&self, pattern: &Perm) -> bool {
        contains(pattern, self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExcStats {
    pub excedances: usize,
    pub fixed_points: usize,
}

/// Sum decomposition of a nonempty permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockProfile {
    /// Sum-indecomposable summands, left to right.
    pub blocks: Vec<Perm>,
    pub first_block_size: usize,
    pub block_count: usize,
    pub period: usize,
}

impl BlockProfile {
    pub fn reassemble(&self) -> Perm {
        self.blocks.iter().fold(Perm::empty(), |acc, b| acc.direct_sum(b))
    }
}

/// True iff `host` has a subsequence order-isomorphic to `pattern`.
pub fn contains(pattern: &Perm, host: &Perm) -> bool {
    find_occurrence(pattern, host).is_some()
}

/// Lexicographically least occurrence of `pattern` in `host`, as 1-based
/// strictly increasing positions.
pub fn find_occurrence(pattern: &Perm, host: &Perm) -> Option<Vec<usize>> {
    if pattern.len() > host.len() {
        return None;
    }
    let m = Matcher::new(pattern.values());
    pattern::find_in_slice(&m, &host.as_i64()).map(|idx| idx.into_iter().map(|i| i as usize + 1).collect())
}

pub fn direct_sum(left: &Perm, right: &Perm) -> Perm {
    left.direct_sum(right)
}

/// Streams `S_n(R)` in lexicographic order, pruning every prefix that
/// already contains a pattern of `R`.
pub fn enumerate_avoiders(n: usize, patterns: &[Perm]) -> Avoiders {
    let matchers: Vec<Matcher> = patterns.iter().map(|p| Matcher::new(p.values())).collect();
    let done = patterns.iter().any(|p| p.is_empty());
    Avoiders { n, matchers, prefix: Vec::with_capacity(n), used: vec![false; n + 1], cursor: vec![1; n + 1], done }
}

/// Iterator returned by [`enumerate_avoiders`].
pub struct Avoiders {
    n: usize,
    matchers: Vec<Matcher>,
    prefix: Vec<i64>,
    used: Vec<bool>,
    cursor: Vec<u32>,
    done: bool,
}

impl Avoiders {
    fn pop(&mut self) {
        match self.prefix.pop() {
            Some(v) => self.used[v as usize] = false,
            None => self.done = true,
        }
    }

    fn prefix_ok(&self) -> bool {
        self.matchers.iter().all(|m| !pattern::ends_with_occurrence(m, &self.prefix))
    }
}

impl Iterator for Avoiders {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        while !self.done {
            let d = self.prefix.len();
            if d == self.n {
                let out = Perm::from_values_unchecked(self.prefix.iter().map(|&v| v as u32).collect());
                self.pop();
                return Some(out);
            }
            let mut extended = false;
            while self.cursor[d] as usize <= self.n {
                let v = self.cursor[d];
                self.cursor[d] += 1;
                if self.used[v as usize] {
                    continue;
                }
                self.prefix.push(v as i64);
                if self.prefix_ok() {
                    self.used[v as usize] = true;
                    extended = true;
                    break;
                }
                self.prefix.pop();
            }
            if extended {
                self.cursor[d + 1] = 1;
            } else {
                self.cursor[d] = 1;
                self.pop();
            }
        }
        None
    }
}

impl fmt::Display for Perm {
    /// Digit string for `n <= 9`, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad digit {c:?}"))))
                .collect::<Result<_>>()?
        };
        Perm::new(values)
    }
}

impl TryFrom<Vec<u32>> for Perm {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Perm::new(v)
    }
}

impl From<Perm> for Vec<u32> {
    fn from(p: Perm) -> Vec<u32> {
        p.values
    }
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    fn all_perms(n: usize) -> Vec<Perm> {
        (1..=n as u32).permutations(n).map(Perm::from_values_unchecked).collect()
    }

    /// Containment by trying every index subset.
    fn contains_brute(pattern: &Perm, host: &Perm) -> bool {
        let h = host.as_i64();
        (0..host.len())
            .combinations(pattern.len())
            .any(|c| Perm::flatten(&c.iter().map(|&i| h[i]).collect::<Vec<_>>()) == *pattern)
    }

    #[test]
    fn containment_examples() {
        let host = p("493125876");
        assert!(contains(&p("4123"), &host));
        // least witness is 9,3,5,8; the occurrence 9,3,5,6 is valid too
        assert_eq!(find_occurrence(&p("4123"), &host), Some(vec![2, 3, 6, 7]));
        let alt: Vec<i64> = [2, 3, 6, 9].iter().map(|&i| host.at(i) as i64).collect();
        assert_eq!(Perm::flatten(&alt), p("4123"));
        assert!(!contains(&p("3142"), &host));
        assert!(contains(&Perm::empty(), &p("21")));
        assert!(!contains(&p("123"), &p("12")));
    }

    #[test]
    fn containment_matches_brute_force() {
        for n in 0..=6 {
            for host in all_perms(n) {
                for k in 0..=4 {
                    for pat in all_perms(k) {
                        assert_eq!(contains(&pat, &host), contains_brute(&pat, &host), "{pat} in {host}");
                    }
                }
            }
        }
    }

    #[test]
    fn containment_is_a_partial_order() {
        let perms: Vec<Perm> = (0..=5).flat_map(all_perms).collect();
        for a in &perms {
            assert!(contains(a, a));
        }
        let small: Vec<Perm> = (0..=4).flat_map(all_perms).collect();
        for a in &small {
            for b in &small {
                if !contains(a, b) {
                    continue;
                }
                for c in &perms {
                    if contains(b, c) {
                        assert!(contains(a, c), "{a} <= {b} <= {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(p("1").direct_sum(&p("21")), p("132"));
        assert_eq!(p("21").direct_sum(&Perm::empty()), p("21"));
        assert_eq!(p("4312").direct_sum(&p("1")).direct_sum(&p("21")), p("4312576"));
    }

    #[test]
    fn blocks_examples() {
        let b = p("4312576").sum_blocks().unwrap();
        assert_eq!(b.blocks, vec![p("4312"), p("1"), p("21")]);
        assert_eq!((b.first_block_size, b.block_count), (4, 3));
        assert_eq!(b.period, 7);

        let id = Perm::identity(5).sum_blocks().unwrap();
        assert_eq!(id.block_count, 5);
        assert_eq!(id.period, 1);

        let b = p("2143").sum_blocks().unwrap();
        assert_eq!(b.blocks, vec![p("21"), p("21")]);
        assert_eq!(b.period, 2);

        assert_eq!(Perm::empty().sum_blocks(), Err(Error::EmptyPermutation));
    }

    #[test]
    fn period_brute_force() {
        for n in 1..=7 {
            for q in all_perms(n) {
                let lambda = (1..=n)
                    .find(|&j| {
                        n % j == 0 && {
                            let head = Perm::flatten(&q.as_i64()[..j]);
                            let rep = (0..n / j).fold(Perm::empty(), |acc, _| acc.direct_sum(&head));
                            rep == q
                        }
                    })
                    .unwrap();
                assert_eq!(q.period(), lambda, "{q}");
            }
        }
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(p("21").inversions(), vec![(1, 2)]);
        assert!(Perm::identity(4).inversions().is_empty());
        assert_eq!(p("312").inversions(), vec![(1, 2), (1, 3)]);
    }

    /// Components of the inversion graph (union-find) equal the sum blocks.
    #[test]
    fn inversion_components_are_blocks() {
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for n in 1..=7 {
            for q in all_perms(n) {
                let mut parent: Vec<usize> = (0..=n).collect();
                for (i, j) in q.inversions() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
                let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
                for i in 1..=n {
                    let r = find(&mut parent, i);
                    by_root.entry(r).or_default().push(i);
                }
                let mut comps: Vec<Vec<usize>> = by_root.into_values().collect();
                comps.sort();
                let sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
                let prof = q.sum_blocks().unwrap();
                let block_sizes: Vec<usize> = prof.blocks.iter().map(Perm::len).collect();
                assert_eq!(sizes, block_sizes, "{q}");
                // components are contiguous intervals
                for c in &comps {
                    assert_eq!(c.last().unwrap() - c[0] + 1, c.len());
                }
            }
        }
    }

    #[test]
    fn exc_stats_examples() {
        let s = Perm::identity(4).exc_stats();
        assert_eq!((s.excedances, s.fixed_points), (0, 4));
        let s = p("21").exc_stats();
        assert_eq!((s.excedances, s.fixed_points), (1, 0));
        // 4312576: excedances at 1, 2, 6; fixed point at 5
        let s = p("4312576").exc_stats();
        assert_eq!((s.excedances, s.fixed_points), (3, 1));
    }

    #[test]
    fn avoider_examples() {
        let r = [p("321"), p("312"), p("231")];
        let got: Vec<Perm> = enumerate_avoiders(3, &r).collect();
        assert_eq!(got, vec![p("123"), p("132"), p("213")]);
        assert_eq!(enumerate_avoiders(4, &[p("321")]).count(), 14);
        let got: Vec<Perm> = enumerate_avoiders(2, &[]).collect();
        assert_eq!(got, vec![p("12"), p("21")]);
        assert_eq!(enumerate_avoiders(0, &[]).collect::<Vec<_>>(), vec![Perm::empty()]);
        assert_eq!(enumerate_avoiders(3, &[Perm::empty()]).count(), 0);
        assert_eq!(enumerate_avoiders(3, &[p("1")]).count(), 0);
    }

    #[test]
    fn avoiders_match_filter() {
        let sets = [vec![p("321")], vec![p("231"), p("312")], vec![p("3142"), p("2413")], vec![p("12")]];
        for r in &sets {
            for n in 0..=7 {
                let filtered: Vec<Perm> =
                    all_perms(n).into_iter().filter(|q| r.iter().all(|t| !contains_brute(t, q))).collect();
                let got: Vec<Perm> = enumerate_avoiders(n, r).collect();
                assert_eq!(got, filtered, "n={n}");
            }
        }
    }

    #[test]
    fn text_form() {
        assert_eq!(p("4312576").to_string(), "4312576");
        let big = Perm::new(vec![10, 1, 2, 3, 4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(big.to_string(), "10,1,2,3,4,5,6,7,8,9");
        assert_eq!(big.to_string().parse::<Perm>().unwrap(), big);
        assert!("122".parse::<Perm>().is_err());
        assert!("14".parse::<Perm>().is_err());
    }

    #[test]
    fn exceedance_fixed_point_refinement() {
        // d^(m)(n,k) = C(n,m) d(n-m,k), both sides by brute force
        let binom = |n: usize, k: usize| -> u64 { (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1)) };
        let table = |n: usize| {
            let mut t = vec![vec![0u64; n + 1]; n + 1];
            for q in all_perms(n) {
                let s = q.exc_stats();
                t[s.fixed_points][s.excedances] += 1;
            }
            t
        };
        let tables: Vec<_> = (0..=7).map(table).collect();
        for n in 0..=7 {
            for m in 0..=n {
                for k in 0..=n {
                    let d = if k <= n - m { tables[n - m][0][k] } else { 0 };
                    assert_eq!(tables[n][m][k], binom(n, m) * d, "n={n} m={m} k={k}");
                }
            }
        }
    }
}
