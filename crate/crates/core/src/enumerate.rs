//! Exact counting of bounded affine permutations.
//!
//! All arithmetic is on arbitrary-precision integers. Brute-force routines
//! stream their objects and refuse sizes above a cap.

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affine::AffinePerm;
use crate::error::{Error, Result};
use crate::perm::{enumerate_avoiders, Perm};

/// Default size cap for brute-force enumeration of bounded affine
/// permutations (`|S̃‖₈|` is about 1.4 million).
pub const DEFAULT_CAP: usize = 8;

/// Triangular table indexed by `n` and `0 <= k <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    rows: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    /// Entry `(n, k)`; zero outside `0..=n`.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        self.rows.get(n).and_then(|r| r.get(k)).cloned().unwrap_or_default()
    }

    pub fn row_sum(&self, n: usize) -> BigUint {
        self.rows[n].iter().sum()
    }
}

/// Pascal's triangle through row `n`.
pub fn binomial_rows(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    rows.push(vec![BigUint::one()]);
    for m in 1..=n {
        let prev = &rows[m - 1];
        let mut row = Vec::with_capacity(m + 1);
        row.push(BigUint::one());
        for k in 1..m {
            row.push(&prev[k - 1] + &prev[k]);
        }
        row.push(BigUint::one());
        rows.push(row);
    }
    rows
}

fn choose(rows: &[Vec<BigUint>], n: usize, k: usize) -> BigUint {
    if k > n {
        BigUint::zero()
    } else {
        rows[n][k].clone()
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// `a(n, k)`: permutations of size `n` with `k` excedances, for `n <= max_n`.
///
/// Built by `a(n,k) = (k+1)·a(n−1,k) + (n−k)·a(n−1,k−1)`, `a(0,0) = 1`.
pub fn eulerian_table(max_n: usize) -> CountTable {
    let mut rows = vec![vec![BigUint::one()]];
    for n in 1..=max_n {
        let prev = &rows[n - 1];
        let at = |k: usize| prev.get(k).cloned().unwrap_or_default();
        let row = (0..=n)
            .map(|k| {
                let stay = at(k) * (k as u64 + 1);
                let grow = if k == 0 { BigUint::zero() } else { at(k - 1) * (n - k) as u64 };
                stay + grow
            })
            .collect();
        rows.push(row);
    }
    CountTable { rows }
}

/// `d(n, k)`: derangements of size `n` with `k` excedances, by the
/// alternating sum `d(n,k) = Σₘ C(n,m)·(−1)ᵐ·a(n−m,k)`.
pub fn derangement_eulerian_table(max_n: usize) -> CountTable {
    let a = eulerian_table(max_n);
    let binom = binomial_rows(max_n);
    let rows = (0..=max_n)
        .into_par_iter()
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let mut acc = BigInt::zero();
                    for (m, c) in binom[n].iter().enumerate().take(n - k + 1) {
                        let term = BigInt::from(c * a.get(n - m, k));
                        if m % 2 == 0 {
                            acc += term;
                        } else {
                            acc -= term;
                        }
                    }
                    debug_assert!(!acc.is_negative());
                    acc.to_biguint().expect("derangement count is non-negative")
                })
                .collect()
        })
        .collect();
    CountTable { rows }
}

/// Same table by `d(n,k) = k·d(n−1,k) + (n−k)·d(n−1,k−1) + (n−1)·d(n−2,k−1)`,
/// linear work per entry.
pub fn derangement_eulerian_recurrence(max_n: usize) -> CountTable {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    let get = |rows: &Vec<Vec<BigUint>>, n: usize, k: usize| -> BigUint {
        rows.get(n).and_then(|r| r.get(k)).cloned().unwrap_or_default()
    };
    for n in 1..=max_n {
        let row = (0..=n)
            .map(|k| {
                let mut v = get(&rows, n - 1, k) * k as u64;
                if k >= 1 {
                    v += get(&rows, n - 1, k - 1) * (n - k) as u64;
                    if n >= 2 {
                        v += get(&rows, n - 2, k - 1) * (n - 1) as u64;
                    }
                }
                v
            })
            .collect();
        rows.push(row);
    }
    CountTable { rows }
}

/// `d(n) = Σₘ C(n,m)·(−1)ᵐ·(n−m)!` for `n <= max_n`.
pub fn derangement_counts(max_n: usize) -> Vec<BigUint> {
    let binom = binomial_rows(max_n);
    let fact: Vec<BigUint> = (0..=max_n).map(factorial).collect();
    (0..=max_n)
        .map(|n| {
            let mut acc = BigInt::zero();
            for m in 0..=n {
                let term = BigInt::from(&binom[n][m] * &fact[n - m]);
                if m % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc.to_biguint().expect("non-negative")
        })
        .collect()
}

/// How `|S̃‖ₙ|` is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Derangement-Eulerian sum `Σₘ C(n,m) Σₖ C(m,k)·d(m,k)`.
    #[serde(rename = "a")]
    FormulaA,
    /// Eulerian sum `Σₘ C(n,m) Σₖ C(m,n−k)·(−1)ⁿ⁻ᵐ·a(m,k)`.
    #[serde(rename = "b")]
    FormulaB,
    /// Stream every bounded affine permutation.
    #[serde(rename = "brute")]
    Brute,
}

/// `|S̃‖ₙ|` for `n = 1..=max_n` by formula (a), sharing one table build.
pub fn bounded_affine_counts_a(max_n: usize) -> Vec<BigUint> {
    let d = derangement_eulerian_recurrence(max_n);
    let binom = binomial_rows(max_n);
    let inner: Vec<BigUint> = (0..=max_n).map(|m| (0..=m).map(|k| &binom[m][k] * d.get(m, k)).sum()).collect();
    (1..=max_n).map(|n| (0..=n).map(|m| &binom[n][m] * &inner[m]).sum()).collect()
}

/// `|S̃‖ₙ|` for `n = 1..=max_n` by formula (b).
pub fn bounded_affine_counts_b(max_n: usize) -> Vec<BigUint> {
    let a = eulerian_table(max_n);
    let binom = binomial_rows(max_n);
    (1..=max_n)
        .map(|n| {
            let mut acc = BigInt::zero();
            for m in 0..=n {
                let mut inner = BigUint::zero();
                for k in 0..=m {
                    inner += choose(&binom, m, n - k) * a.get(m, k);
                }
                let term = BigInt::from(&binom[n][m] * inner);
                if (n - m) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc.to_biguint().expect("count is non-negative")
        })
        .collect()
}

/// `|S̃‖ₙ|` by the chosen method. The brute method refuses `n > cap`.
pub fn count_bounded_affine(n: usize, method: Method, cap: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 });
    }
    match method {
        Method::FormulaA => Ok(bounded_affine_counts_a(n).pop().expect("n >= 1")),
        Method::FormulaB => Ok(bounded_affine_counts_b(n).pop().expect("n >= 1")),
        Method::Brute => Ok(BigUint::from(enumerate_bounded_affine(n, cap)?.count())),
    }
}

/// Words `a ∈ {−1,0,1}ⁿ` that turn `flat` into a bounded affine
/// permutation: `r` entries `−1` on excedances and `r` entries `+1` on
/// anti-excedances, for every `r`.
pub fn bounded_words(flat: &Perm) -> Vec<Vec<i64>> {
    let n = flat.len();
    let (exc, anti): (Vec<usize>, Vec<usize>) =
        (0..n).filter(|&i| flat.values()[i] as usize != i + 1).partition(|&i| flat.values()[i] as usize > i + 1);
    let mut out = Vec::new();
    for r in 0..=exc.len().min(anti.len()) {
        for down in exc.iter().combinations(r) {
            for up in anti.iter().combinations(r) {
                let mut word = vec![0i64; n];
                for &&i in &down {
                    word[i] = -1;
                }
                for &&i in &up {
                    word[i] = 1;
                }
                out.push(word);
            }
        }
    }
    out
}

fn bounded_over(flat: Perm) -> impl Iterator<Item = AffinePerm> {
    bounded_words(&flat).into_iter().map(move |w| AffinePerm::from_standard(&flat, &w).expect("word sums to zero"))
}

/// Streams every bounded affine permutation of size `n`, grouped by the
/// flattened part of the standard decomposition in lexicographic order.
pub fn enumerate_bounded_affine(n: usize, cap: usize) -> Result<impl Iterator<Item = AffinePerm>> {
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 });
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok((1..=n as u32).permutations(n).map(|v| Perm::new(v).expect("permutation")).flat_map(bounded_over))
}

/// `|S̃‖ₙ(R)|` by filtering the brute-force stream through finite-pattern
/// containment; work is split across the flattened parts.
pub fn count_bounded_avoiders(n: usize, patterns: &[Perm], cap: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 });
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let flats: Vec<Perm> = (1..=n as u32).permutations(n).map(|v| Perm::new(v).expect("permutation")).collect();
    let total: u64 = flats
        .into_par_iter()
        .map(|flat| {
            bounded_over(flat)
                .filter(|w| patterns.iter().all(|t| !w.contains_finite_pattern(t, None).expect("default horizon")))
                .count() as u64
        })
        .sum();
    Ok(BigUint::from(total))
}

/// `|Sₙ(R)|` by backtracking.
pub fn count_ordinary_avoiders(n: usize, patterns: &[Perm]) -> BigUint {
    BigUint::from(enumerate_avoiders(n, patterns).count())
}

/// `g(n)`, the number of sum-indecomposable permutations of size `n`, for
/// `n = 0..=max_n` by brute force (`g(0) = 0`).
pub fn indecomposable_counts(max_n: usize, cap: usize) -> Result<Vec<BigUint>> {
    if max_n > cap {
        return Err(Error::CapExceeded { n: max_n, cap });
    }
    let mut out = vec![BigUint::zero()];
    for n in 1..=max_n {
        let c = (1..=n as u32)
            .permutations(n)
            .filter(|v| {
                let mut max = 0;
                v.iter().enumerate().all(|(i, &x)| {
                    max = max.max(x as usize);
                    max > i + 1 || i + 1 == n
                })
            })
            .count();
        out.push(BigUint::from(c));
    }
    Ok(out)
}

/// Integer part as `u64`, for small counts in tests and examples.
pub fn small(n: &BigUint) -> u64 {
    n.to_u64().expect("fits in u64")
}
