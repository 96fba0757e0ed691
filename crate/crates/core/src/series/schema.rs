use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{indecomposables_from_class, ln_big, ClassSpec, Series};
use crate::error::{Error, Result};

/// A number that is known exactly, only approximately, or is `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scalar {
    Exact { num: i64, den: u64 },
    Approx(f64),
    Infinite,
}

impl Scalar {
    pub fn exact(num: i64, den: u64) -> Self {
        Scalar::Exact { num, den }
    }

    pub fn value(&self) -> f64 {
        match *self {
            Scalar::Exact { num, den } => num as f64 / den as f64,
            Scalar::Approx(v) => v,
            Scalar::Infinite => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Scalar::Infinite)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact { num, den: 1 } => write!(f, "{num}"),
            Scalar::Exact { num, den } => write!(f, "{num}/{den}"),
            Scalar::Approx(v) => write!(f, "{v}"),
            Scalar::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Subcritical,
    CriticalUncertain,
    Supercritical,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Subcritical => "subcritical",
            Classification::CriticalUncertain => "critical-uncertain",
            Classification::Supercritical => "supercritical",
        })
    }
}

/// Where `r` and `τ` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Estimate {
    ClosedForm,
    Coefficients,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemaReport {
    pub class: String,
    pub classification: Classification,
    /// Radius of convergence of `G`.
    pub r: Scalar,
    /// `τ = G(r⁻)`.
    pub tau: Scalar,
    /// Root of `G(ρ) = 1`, supercritical only.
    pub rho: Option<f64>,
    /// `α = 1/(ρ·G'(ρ))`.
    pub alpha: Option<f64>,
    /// `β = (ρG''(ρ) + G'(ρ) − ρG'(ρ)²) / (ρ²G'(ρ)³)`.
    pub beta: Option<f64>,
    pub tolerance: f64,
    pub terms: usize,
    pub estimate: Estimate,
}

impl fmt::Display for SchemaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} tau={} r={}", self.classification, self.tau, self.r)?;
        if let (Some(rho), Some(alpha), Some(beta)) = (self.rho, self.alpha, self.beta) {
            write!(f, " rho={rho} alpha={alpha} beta={beta}")?;
        }
        Ok(())
    }
}

/// `P[χₙ = k] = [xⁿ]G(x)ᵏ / fₙ` for `k = 0..=n`.
pub fn block_distribution(f: &Series, n: usize) -> Result<Vec<BigRational>> {
    let f = prefix(f, n)?;
    let g = indecomposables_from_class(&f)?;
    let fnn = f.coeff(n).clone();
    let mut power = Series::one(n);
    let mut out = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        out.push(power.coeff(n) / &fnn);
        power = power.mul_series(&g);
    }
    Ok(out)
}

/// `P(a[n] = j) = gⱼ·fₙ₋ⱼ / fₙ` for `j = 0..=n`.
pub fn first_block_distribution(f: &Series, n: usize) -> Result<Vec<BigRational>> {
    let f = prefix(f, n)?;
    let g = indecomposables_from_class(&f)?;
    if n == 0 {
        return Ok(vec![BigRational::one()]);
    }
    let fnn = f.coeff(n);
    Ok((0..=n).map(|j| g.coeff(j) * f.coeff(n - j) / fnn).collect())
}

/// Exact mean and variance of `χₙ`.
pub fn block_count_moments(f: &Series, n: usize) -> Result<(BigRational, BigRational)> {
    let f = prefix(f, n)?;
    let (m1, m2) = moment_series(&f)?;
    let fnn = f.coeff(n);
    let mean = m1.coeff(n) / fnn;
    let second = m2.coeff(n) / fnn;
    let var = &second - &mean * &mean;
    Ok((mean, var))
}

/// `Σₖ k·Gᵏ = G·F²` and `Σₖ k²·Gᵏ = G(1+G)·F³`.
pub(crate) fn moment_series(f: &Series) -> Result<(Series, Series)> {
    let g = indecomposables_from_class(f)?;
    let f2 = f.mul_series(f);
    let m1 = g.mul_series(&f2);
    let one_g = &Series::one(f.order()) + &g;
    let m2 = m1.mul_series(&one_g).mul_series(f);
    Ok((m1, m2))
}

fn prefix(f: &Series, n: usize) -> Result<Series> {
    if n > f.order() {
        return Err(Error::TooFewTerms { min: n + 1, got: f.order() + 1 });
    }
    let f = f.truncate(n);
    if !f.coeff(n).is_positive() {
        return Err(Error::InvalidClass(format!("f_{n} must be positive")));
    }
    Ok(f)
}

/// Sub-, super- or (numerically) critical sequence schema.
///
/// With a closed form for `G`, `r` and `τ` are taken from it and `ρ` is
/// found by bisection. Otherwise `r` is the mean of `gₙ/gₙ₊₁` over the last
/// quartile of terms and `τ` the truncated sum at that point; both are
/// estimates, not certificates.
pub fn schema_classify(spec: &ClassSpec, terms: usize, tolerance: f64) -> Result<SchemaReport> {
    if terms < 16 {
        return Err(Error::TooFewTerms { min: 16, got: terms });
    }
    let g = spec.g_series(terms)?;
    let coeffs = g.to_integers().ok_or_else(|| Error::InvalidClass("non-integral g".into()))?;
    if coeffs.iter().skip(1).all(Zero::is_zero) {
        return Err(Error::DegenerateClass);
    }
    let eval = |x: f64| eval_terms(&coeffs, x, 0);

    let (r, tau, estimate) = match spec.closed_form() {
        Some(cf) => (cf.radius, cf.tau, Estimate::ClosedForm),
        None => {
            let r = radius_estimate(&coeffs);
            let tau = match r {
                Scalar::Infinite => Scalar::Infinite,
                r => Scalar::Approx(eval(r.value())),
            };
            (r, tau, Estimate::Coefficients)
        }
    };

    let t = tau.value();
    let classification = if t < 1.0 - tolerance {
        Classification::Subcritical
    } else if (t - 1.0).abs() <= tolerance {
        Classification::CriticalUncertain
    } else {
        Classification::Supercritical
    };

    let mut report = SchemaReport {
        class: spec.name().to_string(),
        classification,
        r,
        tau,
        rho: None,
        alpha: None,
        beta: None,
        tolerance,
        terms,
        estimate,
    };
    if classification == Classification::Supercritical {
        let rho = match spec.closed_form() {
            Some(cf) => bisect_root(cf.g, r),
            None => bisect_root(eval, r),
        };
        let d1 = eval_terms(&coeffs, rho, 1);
        let d2 = eval_terms(&coeffs, rho, 2);
        report.rho = Some(rho);
        report.alpha = Some(1.0 / (rho * d1));
        report.beta = Some((rho * d2 + d1 - rho * d1 * d1) / (rho * rho * d1 * d1 * d1));
    }
    Ok(report)
}

/// `Σ n(n−1)⋯(n−d+1)·cₙ·x^{n−d}`, term by term in log space.
fn eval_terms(coeffs: &[BigInt], x: f64, d: usize) -> f64 {
    let lx = x.ln();
    coeffs
        .iter()
        .enumerate()
        .skip(d)
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| {
            let falling: f64 = (0..d).map(|i| (n - i) as f64).product();
            let sign = if c.is_negative() { -1.0 } else { 1.0 };
            sign * falling * (ln_big(&c.abs()) + (n - d) as f64 * lx).exp()
        })
        .sum()
}

fn radius_estimate(coeffs: &[BigInt]) -> Scalar {
    let n = coeffs.len() - 1;
    let start = (3 * n) / 4;
    let ratios: Vec<f64> = (start..n)
        .filter(|&i| coeffs[i].is_positive() && coeffs[i + 1].is_positive())
        .map(|i| (ln_big(&coeffs[i]) - ln_big(&coeffs[i + 1])).exp())
        .collect();
    if ratios.is_empty() {
        Scalar::Infinite
    } else {
        Scalar::Approx(ratios.iter().sum::<f64>() / ratios.len() as f64)
    }
}

/// `ρ` with `G(ρ) = 1` on `(0, r)`, `G` increasing.
fn bisect_root(g: impl Fn(f64) -> f64, r: Scalar) -> f64 {
    let mut hi = match r {
        Scalar::Infinite => {
            let mut hi = 1.0;
            while g(hi) < 1.0 {
                hi *= 2.0;
            }
            hi
        }
        r => r.value(),
    };
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
