//! Truncated power series with exact rational coefficients, and the
//! generating-function toolkit for sum-closed permutation classes.

mod bivariate;
mod classes;
mod diagnostics;
mod schema;

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use bivariate::{bivariate_check, BivariateReport, BIVARIATE_MAX};
pub use classes::{Builtin, ClassSpec, ClosedForm};
pub use diagnostics::{
    bounded_total_diagnostics, enasym_ratio_sequence, enasym_target, q_values, qlim_target, scaled_q_sequence,
    subcritical_diagnostics, supercritical_diagnostics, Checkpoint, DiagSequence, DiagnosticsReport,
};
pub use schema::{
    block_count_moments, block_distribution, first_block_distribution, schema_classify, Classification, Estimate,
    Scalar, SchemaReport,
};

/// `Σ cₙ xⁿ` known exactly for `n <= order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

fn int(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

impl Series {
    /// Coefficients `c₀ … c_N`; `N` becomes the truncation order.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        Series { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Series::new(coeffs.into_iter().map(|c| int(c.into())).collect())
    }

    pub fn zero(order: usize) -> Self {
        Series::new(vec![BigRational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Series {
        let mut c = self.coeffs.clone();
        c.resize(order + 1, BigRational::zero());
        Series::new(c)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Non-negative integer coefficients, if that is what they are.
    pub fn to_naturals(&self) -> Option<Vec<BigUint>> {
        self.to_integers()?.into_iter().map(|c| c.to_biguint()).collect()
    }

    pub fn scale(&self, k: &BigRational) -> Series {
        Series::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Product truncated to the smaller order.
    pub fn mul_series(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        if let (Some(a), Some(b)) = (self.to_integers(), other.to_integers()) {
            let mut out = vec![BigInt::zero(); order + 1];
            for (i, ai) in a.iter().enumerate().take(order + 1) {
                if ai.is_zero() {
                    continue;
                }
                for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
                    out[i + j] += ai * bj;
                }
            }
            return Series::from_integers(out);
        }
        let mut out = vec![BigRational::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                out[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        Series::new(out)
    }

    pub fn pow(&self, k: usize) -> Series {
        (0..k).fold(Series::one(self.order()), |acc, _| acc.mul_series(self))
    }

    /// `1 / self`; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Series> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        if a0.is_one() || (-a0).is_one() {
            if let Some(a) = self.to_integers() {
                let sign = a[0].clone();
                let mut b: Vec<BigInt> = Vec::with_capacity(n + 1);
                b.push(sign.clone());
                for m in 1..=n {
                    let mut acc = BigInt::zero();
                    for k in 1..=m {
                        if !a[k].is_zero() {
                            acc += &a[k] * &b[m - k];
                        }
                    }
                    b.push(-acc * &sign);
                }
                return Ok(Series::from_integers(b));
            }
        }
        let inv0 = a0.recip();
        let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &b[m - k];
                }
            }
            b.push(-acc * &inv0);
        }
        Ok(Series::new(b))
    }

    /// `d/dx`, which loses one order of precision.
    pub fn derivative(&self) -> Series {
        if self.order() == 0 {
            return Series::zero(0);
        }
        Series::new(self.coeffs.iter().enumerate().skip(1).map(|(n, c)| c * BigInt::from(n)).collect())
    }

    /// `x·d/dx`, same order.
    pub fn x_derivative(&self) -> Series {
        Series::new(self.coeffs.iter().enumerate().map(|(n, c)| c * BigInt::from(n)).collect())
    }

    /// `x·F'(x)/F(x) = x·d/dx log F(x)`.
    pub fn log_derivative(&self) -> Result<Series> {
        Ok(self.x_derivative().mul_series(&self.reciprocal()?))
    }

    /// Truncated sum evaluated in floating point.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series::new((0..=order).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect())
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series::new((0..=order).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect())
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.mul_series(rhs)
    }
}

fn check_unit_constant(f: &Series) -> Result<()> {
    if f.coeff(0).is_one() {
        Ok(())
    } else {
        Err(Error::InvalidClass(format!("f₀ must be 1, got {}", f.coeff(0))))
    }
}

/// `G = 1 − 1/F`: indecomposables of a sum-closed class from the class.
pub fn indecomposables_from_class(f: &Series) -> Result<Series> {
    check_unit_constant(f)?;
    Ok(&Series::one(f.order()) - &f.reciprocal()?)
}

/// `F = 1/(1 − G)`.
pub fn class_from_indecomposables(g: &Series) -> Result<Series> {
    if !g.coeff(0).is_zero() {
        return Err(Error::InvalidClass(format!("g₀ must be 0, got {}", g.coeff(0))));
    }
    (&Series::one(g.order()) - g).reciprocal()
}

/// `F̃ = x·F'/F`, the decomposable affine class, via the log-derivative.
pub fn affine_from_class(f: &Series) -> Result<Series> {
    check_unit_constant(f)?;
    f.log_derivative()
}

/// `f̃ₙ = Σₖ k·gₖ·fₙ₋ₖ`, the same series by first-block convolution.
pub fn affine_from_class_convolution(f: &Series) -> Result<Series> {
    let g = indecomposables_from_class(f)?;
    Ok(g.x_derivative().mul_series(f))
}

/// Natural-logarithm of a positive big integer without overflowing `f64`.
pub(crate) fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().expect("finite").ln()
    } else {
        let shift = bits - 64;
        let top: BigInt = x >> shift;
        top.to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Floating value of a rational whose parts may exceed `f64` range.
pub(crate) fn ratio_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let Some(v) = r.to_f64().filter(|v| v.is_finite() && *v != 0.0) {
        return v;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * (ln_big(&r.numer().abs()) - ln_big(&r.denom().abs())).exp()
}
