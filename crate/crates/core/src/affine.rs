//! Affine permutations of `ℤ` given by a window `ω(1), …, ω(n)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::Matcher;
use crate::perm::Perm;

/// An affine permutation together with its size.
///
/// The size is the window length, so the same function viewed with
/// period `n` and with period `2n` gives two distinct values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct AffinePerm {
    window: Vec<i64>,
}

/// `ω(i) = flat(i) + n·word[i]` on `1..=n`, with `Σ word = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StdDecomposition {
    pub flat: Perm,
    pub word: Vec<i64>,
}

impl StdDecomposition {
    /// Sign pattern that characterises bounded affine permutations: `-1`
    /// only on excedances of `flat`, `+1` only on its anti-excedances.
    pub fn has_bounded_signs(&self) -> bool {
        self.flat.values().iter().zip(&self.word).enumerate().all(|(i, (&f, &a))| {
            let pos = i as u32 + 1;
            match f.cmp(&pos) {
                std::cmp::Ordering::Greater => a == -1 || a == 0,
                std::cmp::Ordering::Equal => a == 0,
                std::cmp::Ordering::Less => a == 0 || a == 1,
            }
        })
    }
}

/// A decomposable affine permutation written as `Σʳ(⊕π)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub shift: i64,
    pub block: Perm,
}

/// The two finite oscillations of each size `k >= 3`, in the order
/// `312, 231`, `3142, 2413`, `31524, 24153`, ...
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OscVariant {
    First,
    Second,
}

impl AffinePerm {
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::EmptyWindow);
        }
        let mut owner: Vec<Option<i64>> = vec![None; n];
        for &w in &window {
            let r = w.rem_euclid(n as i64) as usize;
            if let Some(prev) = owner[r] {
                return Err(Error::Distinctness { first: prev, second: w, n });
            }
            owner[r] = Some(w);
        }
        let actual: i64 = window.iter().sum();
        let expected = (n * (n + 1) / 2) as i64;
        if actual != expected {
            return Err(Error::Centering { actual, expected });
        }
        Ok(AffinePerm { window })
    }

    pub(crate) fn from_window_unchecked(window: Vec<i64>) -> Self {
        debug_assert!(AffinePerm::new(window.clone()).is_ok());
        AffinePerm { window }
    }

    pub fn identity(n: usize) -> Self {
        AffinePerm { window: (1..=n as i64).collect() }
    }

    pub fn size(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `ω(i)` for any integer `i`.
    pub fn apply(&self, i: i64) -> i64 {
        let n = self.size() as i64;
        let q = (i - 1).div_euclid(n);
        let r = (i - 1).rem_euclid(n);
        self.window[r as usize] + q * n
    }

    pub fn is_bounded(&self) -> bool {
        self.max_displacement() < self.size() as i64
    }

    /// `max |ω(i) − i|`; one period suffices.
    pub fn max_displacement(&self) -> i64 {
        self.window.iter().enumerate().map(|(i, &w)| (w - (i as i64 + 1)).abs()).max().unwrap_or(0)
    }

    /// `Σʳω(i) = ω(i − r) + r`.
    pub fn shift(&self, r: i64) -> AffinePerm {
        let window = (1..=self.size() as i64).map(|i| self.apply(i - r) + r).collect();
        AffinePerm::from_window_unchecked(window)
    }

    /// The periodic extension `⊕π` of a nonempty permutation.
    pub fn infinite_sum(p: &Perm) -> Result<AffinePerm> {
        if p.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        Ok(AffinePerm::from_window_unchecked(p.as_i64()))
    }

    pub fn standard_decomposition(&self) -> StdDecomposition {
        let n = self.size() as i64;
        let mut flat = Vec::with_capacity(self.size());
        let mut word = Vec::with_capacity(self.size());
        for &w in &self.window {
            let f = (w - 1).rem_euclid(n) + 1;
            flat.push(f as u32);
            word.push((w - f) / n);
        }
        StdDecomposition { flat: Perm::from_values_unchecked(flat), word }
    }

    pub fn from_standard(flat: &Perm, word: &[i64]) -> Result<AffinePerm> {
        if flat.len() != word.len() {
            return Err(Error::LengthMismatch { perm: flat.len(), word: word.len() });
        }
        if flat.is_empty() {
            return Err(Error::EmptyWindow);
        }
        let total: i64 = word.iter().sum();
        if total != 0 {
            return Err(Error::NonZeroWord(total));
        }
        let n = flat.len() as i64;
        let window = flat.values().iter().zip(word).map(|(&f, &a)| f as i64 + n * a).collect();
        Ok(AffinePerm::from_window_unchecked(window))
    }

    /// The permutation order-isomorphic to the window.
    pub fn window_flatten(&self) -> Perm {
        Perm::flatten(&self.window)
    }

    /// Window values in increasing order.
    pub fn value_set(&self) -> Vec<i64> {
        let mut v = self.window.clone();
        v.sort_unstable();
        v
    }

    /// Rebuilds `ω` from its flattened window and value set: `ω(i)` is the
    /// `flat(i)`-th smallest value.
    pub fn from_flatten_and_values(flat: &Perm, values: &[i64]) -> Result<AffinePerm> {
        if flat.len() != values.len() {
            return Err(Error::LengthMismatch { perm: flat.len(), word: values.len() });
        }
        let mut sorted = values.to_vec();
        sorted.sort_unstable();
        AffinePerm::new(flat.values().iter().map(|&r| sorted[r as usize - 1]).collect())
    }

    /// Per-gap horizon `n + 2Δ` that makes the occurrence search exact.
    pub fn default_horizon(&self) -> u64 {
        (self.size() as i64 + 2 * self.max_displacement()) as u64
    }

    /// Whether `ω` contains the ordinary pattern `tau`.
    ///
    /// Occurrences are normalised so their first index lies in `1..=n` and
    /// consecutive indices differ by at most the horizon. A wider gap can
    /// always be closed by translating the tail of the occurrence down by
    /// `n`: entries more than `2Δ` apart in position never form an
    /// inversion, so all relative orders survive.
    pub fn contains_finite_pattern(&self, tau: &Perm, horizon: Option<u64>) -> Result<bool> {
        Ok(self.find_finite_pattern(tau, horizon)?.is_some())
    }

    /// Lexicographically least normalised occurrence of `tau`.
    pub fn find_finite_pattern(&self, tau: &Perm, horizon: Option<u64>) -> Result<Option<Vec<i64>>> {
        let minimum = self.default_horizon();
        let h = match horizon {
            Some(h) if h < minimum => return Err(Error::HorizonTooSmall { given: h, minimum }),
            Some(h) => h as i64,
            None => minimum as i64,
        };
        if tau.is_empty() {
            return Ok(Some(Vec::new()));
        }
        let n = self.size() as i64;
        let m = Matcher::new(tau.values());
        Ok(m.find(
            |j, prev| match (j, prev) {
                (0, _) | (_, None) => 1..=n,
                (_, Some(p)) => (p + 1)..=(p + h),
            },
            |i| self.apply(i),
        ))
    }

    /// `Some((r, π))` with `ω = Σʳ(⊕π)` for the smallest cut `r` in
    /// `0..n`, or `None` when `ω` is indecomposable.
    ///
    /// `c` is a cut iff `ω` maps `(-∞, c]` into itself, and only indices
    /// in `(c − Δ, c]` can violate that.
    pub fn is_decomposable(&self) -> Option<Decomposition> {
        let n = self.size() as i64;
        let delta = self.max_displacement();
        let r = (0..n).find(|&c| ((c - delta + 1)..=c).all(|i| self.apply(i) <= c))?;
        let seg: Vec<i64> = ((r + 1)..=(r + n)).map(|i| self.apply(i)).collect();
        Some(Decomposition { shift: r, block: Perm::flatten(&seg) })
    }

    /// Equality as functions `ℤ → ℤ`, ignoring the size tag.
    pub fn same_function(&self, other: &AffinePerm) -> bool {
        let span = num_integer::lcm(self.size(), other.size()) as i64;
        (1..=span).all(|i| self.apply(i) == other.apply(i))
    }
}

/// The infinite increasing oscillation, of size 2 with window `(3, 0)`.
pub fn oscillation() -> AffinePerm {
    AffinePerm::from_window_unchecked(vec![3, 0])
}

/// The `j`-th vertex (`j >= 0`) along the inversion graph of the infinite
/// oscillation, which is the path `… 2 – 1 – 4 – 3 – 6 – 5 …`.
fn oscillation_path_vertex(j: i64) -> i64 {
    if j % 2 == 0 {
        j + 2
    } else {
        j
    }
}

/// The finite oscillation of size `k`: `k` consecutive vertices of the
/// oscillation's inversion path, flattened. Sizes 1 and 2 have a single
/// oscillation (`1`, `21`) and both variants return it.
pub fn finite_oscillation(k: usize, variant: OscVariant) -> Perm {
    let start = match variant {
        OscVariant::First => 0,
        OscVariant::Second => 1,
    };
    let osc = oscillation();
    let mut positions: Vec<i64> = (start..start + k as i64).map(oscillation_path_vertex).collect();
    positions.sort_unstable();
    let values: Vec<i64> = positions.iter().map(|&i| osc.apply(i)).collect();
    Perm::flatten(&values)
}

/// All finite oscillations of size `k` (one for `k <= 2`, two otherwise).
pub fn finite_oscillations(k: usize) -> Vec<Perm> {
    let a = finite_oscillation(k, OscVariant::First);
    let b = finite_oscillation(k, OscVariant::Second);
    if a == b {
        vec![a]
    } else {
        vec![a, b]
    }
}

impl fmt::Display for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for AffinePerm {
    type Err = Error;

    /// Comma-separated signed window, optionally followed by `;size=N`.
    fn from_str(s: &str) -> Result<Self> {
        let (body, declared) = match s.split_once(';') {
            Some((body, tail)) => {
                let n = tail
                    .trim()
                    .strip_prefix("size=")
                    .ok_or_else(|| Error::Parse(format!("unexpected suffix {tail:?}")))?
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(e.to_string()))?;
                (body, Some(n))
            }
            None => (s, None),
        };
        let window: Vec<i64> = body
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<_>>()?;
        if let Some(n) = declared {
            if n != window.len() {
                return Err(Error::SizeMismatch { declared: n, actual: window.len() });
            }
        }
        AffinePerm::new(window)
    }
}

impl TryFrom<Vec<i64>> for AffinePerm {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        AffinePerm::new(v)
    }
}

impl From<AffinePerm> for Vec<i64> {
    fn from(a: AffinePerm) -> Vec<i64> {
        a.window
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> AffinePerm {
        AffinePerm::new(vec![2, 7, -2, -1, 9, 6]).unwrap()
    }

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(fig1().size(), 6);
        assert!(AffinePerm::new(vec![1, 2, 3]).is_ok());
        assert!(matches!(AffinePerm::new(vec![3, 3]), Err(Error::Distinctness { .. })));
        assert!(matches!(AffinePerm::new(vec![1, 3]), Err(Error::Distinctness { .. })));
        assert!(matches!(AffinePerm::new(vec![2, 3]), Err(Error::Centering { actual: 5, expected: 3 })));
        assert_eq!(AffinePerm::new(vec![]), Err(Error::EmptyWindow));
    }

    #[test]
    fn apply_examples() {
        assert_eq!(fig1().apply(7), 8);
        assert_eq!(AffinePerm::identity(3).apply(-5), -5);
        let o = oscillation();
        let row: Vec<i64> = (-1..=4).map(|i| o.apply(i)).collect();
        assert_eq!(row, vec![1, -2, 3, 0, 5, 2]);
    }

    #[test]
    fn boundedness() {
        assert!(fig1().is_bounded());
        assert!(!oscillation().is_bounded());
        for n in 1..6 {
            assert!(AffinePerm::identity(n).is_bounded());
        }
    }

    #[test]
    fn displacement() {
        assert_eq!(AffinePerm::identity(4).max_displacement(), 0);
        assert_eq!(fig1().max_displacement(), 5);
        assert_eq!(oscillation().max_displacement(), 2);
    }

    #[test]
    fn shifts() {
        let s21 = AffinePerm::infinite_sum(&p("21")).unwrap();
        assert_eq!(s21.shift(2), s21);
        assert_eq!(s21.shift(1).window(), &[0, 3]);
        assert_eq!(AffinePerm::identity(4).shift(5), AffinePerm::identity(4));
        let w = fig1();
        assert_eq!(w.shift(3).shift(-7), w.shift(-4));
        assert_eq!(w.shift(6), w);
    }

    #[test]
    fn infinite_sums() {
        assert_eq!(AffinePerm::infinite_sum(&p("21")).unwrap().window(), &[2, 1]);
        assert_eq!(AffinePerm::infinite_sum(&p("243165")).unwrap().window(), &[2, 4, 3, 1, 6, 5]);
        assert_eq!(AffinePerm::infinite_sum(&Perm::empty()), Err(Error::EmptyPermutation));
        let q = p("243165");
        let doubled = AffinePerm::infinite_sum(&q.direct_sum(&q)).unwrap();
        let single = AffinePerm::infinite_sum(&q).unwrap();
        assert_ne!(doubled, single);
        assert!(doubled.same_function(&single));
    }

    #[test]
    fn standard_decomposition_examples() {
        let d = fig1().standard_decomposition();
        assert_eq!(d.flat, p("214536"));
        assert_eq!(d.word, vec![0, 1, -1, -1, 1, 0]);
        assert!(d.has_bounded_signs());
        assert_eq!(AffinePerm::from_standard(&d.flat, &d.word).unwrap(), fig1());

        let q = p("3142");
        let d = AffinePerm::infinite_sum(&q).unwrap().standard_decomposition();
        assert_eq!((d.flat, d.word), (q, vec![0; 4]));

        assert_eq!(AffinePerm::from_standard(&p("21"), &[-1, 1]).unwrap().window(), &[0, 3]);
        assert_eq!(AffinePerm::from_standard(&p("21"), &[1, 1]), Err(Error::NonZeroWord(2)));
        // an unbounded permutation breaks the sign pattern
        assert!(!oscillation().standard_decomposition().has_bounded_signs());
    }

    #[test]
    fn flatten_examples() {
        assert_eq!(fig1().window_flatten(), p("351264"));
        assert_eq!(AffinePerm::identity(5).window_flatten(), Perm::identity(5));
        assert_eq!(oscillation().window_flatten(), p("21"));
        let w = fig1();
        assert_eq!(AffinePerm::from_flatten_and_values(&w.window_flatten(), &w.value_set()).unwrap(), w);
    }

    #[test]
    fn containment_examples() {
        let w = fig1();
        assert!(w.contains_finite_pattern(&p("321"), None).unwrap());
        assert!(!AffinePerm::identity(1).contains_finite_pattern(&p("21"), None).unwrap());
        // 2143 = 21 ⊕ 21 straddles two copies of the block 243165
        let s = AffinePerm::infinite_sum(&p("243165")).unwrap();
        assert!(s.contains_finite_pattern(&p("2143"), None).unwrap());
        assert!(!s.contains_finite_pattern(&p("3142"), None).unwrap());
        assert!(matches!(
            w.contains_finite_pattern(&p("21"), Some(3)),
            Err(Error::HorizonTooSmall { given: 3, minimum: 16 })
        ));
        assert!(w.contains_finite_pattern(&Perm::empty(), None).unwrap());
    }

    #[test]
    fn decomposability_examples() {
        let d = AffinePerm::new(vec![2, 4, 3, 1, 6, 5]).unwrap().is_decomposable().unwrap();
        assert_eq!((d.shift, d.block), (0, p("243165")));
        assert_eq!(fig1().is_decomposable(), None);
        assert_eq!(oscillation().is_decomposable(), None);
        let id = AffinePerm::identity(3).is_decomposable().unwrap();
        assert_eq!((id.shift, id.block), (0, Perm::identity(3)));
        // a shifted sum recovers its block up to the choice of cut
        let base = AffinePerm::infinite_sum(&p("2413")).unwrap().shift(2);
        let d = base.is_decomposable().unwrap();
        assert_eq!(AffinePerm::infinite_sum(&d.block).unwrap().shift(d.shift), base);
    }

    #[test]
    fn oscillation_list() {
        let got: Vec<String> = (1..=6).flat_map(finite_oscillations).map(|q| q.to_string()).collect();
        assert_eq!(got, ["1", "21", "312", "231", "3142", "2413", "31524", "24153", "315264", "241635"]);
    }

    #[test]
    fn oscillation_path_is_induced() {
        let o = oscillation();
        let inv = |a: i64, b: i64| (a < b) == (o.apply(a) > o.apply(b));
        let verts: Vec<i64> = (0..12).map(oscillation_path_vertex).collect();
        for x in 0..verts.len() {
            for y in x + 1..verts.len() {
                assert_eq!(inv(verts[x], verts[y]), y == x + 1, "{x} {y}");
            }
        }
    }

    #[test]
    fn oscillations_indecomposable_and_contained() {
        let o = oscillation();
        for k in 1..=8 {
            for q in finite_oscillations(k) {
                assert!(q.is_indecomposable(), "{q}");
                assert!(o.contains_finite_pattern(&q, None).unwrap(), "{q}");
            }
        }
    }

    #[test]
    fn parse_window() {
        assert_eq!("2,7,-2,-1,9,6".parse::<AffinePerm>().unwrap(), fig1());
        assert_eq!("2,7,-2,-1,9,6;size=6".parse::<AffinePerm>().unwrap(), fig1());
        assert!(matches!(
            "2,7,-2,-1,9,6;size=3".parse::<AffinePerm>(),
            Err(Error::SizeMismatch { declared: 3, actual: 6 })
        ));
        assert_eq!(fig1().to_string(), "2,7,-2,-1,9,6");
    }
}
