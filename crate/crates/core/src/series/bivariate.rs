use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::enumerate::{derangement_eulerian_table, eulerian_table, factorial, small};
use crate::error::{Error, Result};

/// Largest order accepted by [`bivariate_check`].
pub const BIVARIATE_MAX: usize = 12;

/// Rows `n!·[zⁿuᵏ]` of `A(z,u)` and `D(z,u) = e^{−z}·A(z,u)`, compared
/// against the Eulerian and derangement Eulerian tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivariateReport {
    pub max_n: usize,
    pub a_rows: Vec<Vec<u64>>,
    pub d_rows: Vec<Vec<u64>>,
    pub eulerian_ok: bool,
    pub derangement_ok: bool,
}

impl BivariateReport {
    pub fn passed(&self) -> bool {
        self.eulerian_ok && self.derangement_ok
    }
}

/// Polynomial in `u`, lowest degree first.
type Poly = Vec<BigRational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_into(acc: &mut Poly, p: &Poly) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigRational::zero());
    }
    for (a, x) in acc.iter_mut().zip(p) {
        *a += x;
    }
}

/// Expand `A = 1 / (1 − Σ_{n≥1} (u−1)^{n−1}·zⁿ/n!)` and `D = e^{−z}·A` exactly.
pub fn bivariate_check(max_n: usize) -> Result<BivariateReport> {
    if max_n > BIVARIATE_MAX {
        return Err(Error::CapExceeded { n: max_n, cap: BIVARIATE_MAX });
    }
    let fact: Vec<BigInt> = (0..=max_n).map(|n| BigInt::from(factorial(n))).collect();
    let u_minus_1: Poly = vec![-BigRational::one(), BigRational::one()];

    // c[n] = (u−1)^{n−1} / n!
    let mut c: Vec<Poly> = vec![vec![BigRational::zero()]];
    let mut power: Poly = vec![BigRational::one()];
    for f in &fact[1..] {
        c.push(power.iter().map(|x| x / f).collect());
        power = poly_mul(&power, &u_minus_1);
    }

    let mut a: Vec<Poly> = vec![vec![BigRational::one()]];
    for m in 1..=max_n {
        let mut acc: Poly = vec![BigRational::zero()];
        for k in 1..=m {
            poly_add_into(&mut acc, &poly_mul(&c[k], &a[m - k]));
        }
        a.push(acc);
    }

    let mut d: Vec<Poly> = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let mut acc: Poly = vec![BigRational::zero()];
        for j in 0..=n {
            let coef = BigRational::new(if j % 2 == 0 { BigInt::one() } else { -BigInt::one() }, fact[j].clone());
            let term: Poly = a[n - j].iter().map(|x| x * &coef).collect();
            poly_add_into(&mut acc, &term);
        }
        d.push(acc);
    }

    let to_rows = |polys: &[Poly]| -> Option<Vec<Vec<u64>>> {
        polys
            .iter()
            .enumerate()
            .map(|(n, p)| {
                let row: Vec<u64> = (0..=n)
                    .map(|k| {
                        let v = p.get(k).cloned().unwrap_or_else(BigRational::zero) * &fact[n];
                        if v.is_integer() {
                            v.to_integer().to_u64()
                        } else {
                            None
                        }
                    })
                    .collect::<Option<_>>()?;
                if p.iter().skip(n + 1).any(|x| !x.is_zero()) {
                    return None;
                }
                Some(row)
            })
            .collect()
    };
    let a_rows = to_rows(&a).ok_or_else(|| Error::InvalidClass("A has non-integral rows".into()))?;
    let d_rows = to_rows(&d).ok_or_else(|| Error::InvalidClass("D has non-integral rows".into()))?;

    let eul = eulerian_table(max_n);
    let der = derangement_eulerian_table(max_n);
    let as_u64 = |row: &[num_bigint::BigUint]| row.iter().map(small).collect::<Vec<_>>();
    let eulerian_ok = (0..=max_n).all(|n| a_rows[n] == as_u64(eul.row(n)));
    let derangement_ok = (0..=max_n).all(|n| d_rows[n] == as_u64(der.row(n)));
    Ok(BivariateReport { max_n, a_rows, d_rows, eulerian_ok, derangement_ok })
}
