use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::schema::moment_series;
use super::{
    affine_from_class, indecomposables_from_class, ln_big, ratio_f64, schema_classify, ClassSpec, Classification,
};
use crate::enumerate::{binomial_rows, derangement_eulerian_recurrence, factorial};
use crate::error::{Error, Result};

const CLASSIFY_TOLERANCE: f64 = 1e-9;

/// Slack allowed when comparing deviations, below which `f64` rounding dominates.
const ROUNDING_SLACK: f64 = 1e-12;

/// `(1/e)·√(3/(2π))`, the limit of `√m·Qₘ`.
pub fn qlim_target() -> f64 {
    (3.0 / (2.0 * std::f64::consts::PI)).sqrt() / std::f64::consts::E
}

/// `√(3/(2πe))`, the limit of `|S̃‖ₙ|·√n / (2ⁿ·n!)`.
pub fn enasym_target() -> f64 {
    (3.0 / (2.0 * std::f64::consts::PI * std::f64::consts::E)).sqrt()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub n: usize,
    pub value: f64,
    pub deviation: f64,
}

/// A ratio sequence sampled at `N/4`, `N/2` and `N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagSequence {
    pub name: String,
    pub target: f64,
    pub checkpoints: Vec<Checkpoint>,
    pub last: f64,
    pub deviation: f64,
    /// Deviation never grows across the checkpoints.
    pub non_increasing: bool,
}

impl DiagSequence {
    fn sample(name: &str, target: f64, max_n: usize, value: impl Fn(usize) -> f64) -> Self {
        let mut ns = vec![(max_n / 4).max(1), (max_n / 2).max(1), max_n];
        ns.dedup();
        let checkpoints: Vec<Checkpoint> = ns
            .into_iter()
            .map(|n| {
                let v = value(n);
                Checkpoint { n, value: v, deviation: (v - target).abs() }
            })
            .collect();
        let last = checkpoints.last().expect("nonempty");
        DiagSequence {
            name: name.to_string(),
            target,
            last: last.value,
            deviation: last.deviation,
            non_increasing: checkpoints.windows(2).all(|w| w[1].deviation <= w[0].deviation + ROUNDING_SLACK),
            checkpoints,
        }
    }

    /// Within `tol` of the target at the last index and non-increasing.
    pub fn approaches(&self, tol: f64) -> bool {
        self.deviation < tol && self.non_increasing
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    pub subject: String,
    pub sequences: Vec<DiagSequence>,
}

impl DiagnosticsReport {
    pub fn sequence(&self, name: &str) -> Option<&DiagSequence> {
        self.sequences.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for DiagnosticsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sequences {
            write!(f, "{}", s.name)?;
            for c in &s.checkpoints {
                write!(f, " n={}:{}", c.n, c.value)?;
            }
            writeln!(f, " target={} deviation={} non_increasing={}", s.target, s.deviation, s.non_increasing)?;
        }
        Ok(())
    }
}

/// `a / b` in floating point for integers of any size.
pub(crate) fn div_f64(a: &BigInt, b: &BigInt) -> f64 {
    let bits = a.bits().max(b.bits());
    let shift = bits.saturating_sub(1000);
    let (a, b) = (a >> shift, b >> shift);
    a.to_f64().unwrap_or(f64::NAN) / b.to_f64().unwrap_or(f64::NAN)
}

fn require(spec: &ClassSpec, terms: usize, want: Classification) -> Result<super::SchemaReport> {
    let report = schema_classify(spec, terms.max(16), CLASSIFY_TOLERANCE)?;
    if report.classification != want {
        return Err(Error::Misclassified { expected: want.to_string(), actual: report.classification.to_string() });
    }
    Ok(report)
}

/// `gₙ/fₙ → (1−τ)²`, `f̃ₙ/((1−τ)·n·fₙ) → 1` and `E[χₙ] → (1+τ)/(1−τ)`.
pub fn subcritical_diagnostics(spec: &ClassSpec, terms: usize) -> Result<DiagnosticsReport> {
    let report = require(spec, terms, Classification::Subcritical)?;
    let tau = report.tau.value();
    let f = spec.f_series(terms)?;
    let fi = f.to_integers().expect("integral");
    let gi = indecomposables_from_class(&f)?.to_integers().expect("integral");
    let ai = affine_from_class(&f)?.to_integers().expect("integral");
    let mi = moment_series(&f)?.0.to_integers().expect("integral");
    let sequences = vec![
        DiagSequence::sample("g/f", (1.0 - tau).powi(2), terms, |n| div_f64(&gi[n], &fi[n])),
        DiagSequence::sample("affine/(1-tau)nf", 1.0, terms, |n| div_f64(&ai[n], &(&fi[n] * n)) / (1.0 - tau)),
        DiagSequence::sample("mean_blocks", (1.0 + tau) / (1.0 - tau), terms, |n| div_f64(&mi[n], &fi[n])),
    ];
    Ok(DiagnosticsReport { subject: spec.name().to_string(), sequences })
}

/// `fₙρⁿ → α`, `f̃ₙρⁿ → 1`, `E[χₙ]/n → α` and `Var[χₙ]/n → β`.
pub fn supercritical_diagnostics(spec: &ClassSpec, terms: usize) -> Result<DiagnosticsReport> {
    let report = require(spec, terms, Classification::Supercritical)?;
    let (rho, alpha, beta) =
        (report.rho.expect("supercritical"), report.alpha.expect("supercritical"), report.beta.expect("supercritical"));
    let f = spec.f_series(terms)?;
    let fi = f.to_integers().expect("integral");
    let ai = affine_from_class(&f)?.to_integers().expect("integral");
    let (m1, m2) = moment_series(&f)?;
    let m1 = m1.to_integers().expect("integral");
    let m2 = m2.to_integers().expect("integral");
    let scaled = |c: &BigInt, n: usize| (ln_big(c) + n as f64 * rho.ln()).exp();
    let sequences = vec![
        DiagSequence::sample("f*rho^n", alpha, terms, |n| scaled(&fi[n], n)),
        DiagSequence::sample("affine*rho^n", 1.0, terms, |n| scaled(&ai[n], n)),
        DiagSequence::sample("mean_blocks/n", alpha, terms, |n| div_f64(&m1[n], &fi[n]) / n as f64),
        DiagSequence::sample("var_blocks/n", beta, terms, |n| {
            let num = &m2[n] * &fi[n] - &m1[n] * &m1[n];
            div_f64(&num, &(&fi[n] * &fi[n])) / n as f64
        }),
    ];
    Ok(DiagnosticsReport { subject: spec.name().to_string(), sequences })
}

/// `Σₖ C(m,k)·d(m,k)` for `m = 0..=max_m`.
fn inner_sums(max_m: usize) -> Vec<BigUint> {
    let d = derangement_eulerian_recurrence(max_m);
    let binom = binomial_rows(max_m);
    (0..=max_m).map(|m| (0..=m).map(|k| &binom[m][k] * d.get(m, k)).sum()).collect()
}

/// `2ᵐ·m!` for `m = 0..=max_m`.
fn scales(max_m: usize) -> Vec<BigUint> {
    (0..=max_m).map(|m| factorial(m) << m).collect()
}

/// `Qₘ = Σₖ C(m,k)·d(m,k) / (2ᵐ·m!)`, exact, for `m = 0..=max_m`.
pub fn q_values(max_m: usize) -> Vec<BigRational> {
    inner_sums(max_m).into_iter().zip(scales(max_m)).map(|(a, b)| BigRational::new(a.into(), b.into())).collect()
}

/// `√m·Qₘ` for `m = 0..=max_m`.
pub fn scaled_q_sequence(max_m: usize) -> Vec<f64> {
    inner_sums(max_m)
        .iter()
        .zip(scales(max_m))
        .enumerate()
        .map(|(m, (a, b))| (m as f64).sqrt() * div_f64(&a.clone().into(), &b.into()))
        .collect()
}

/// `|S̃‖ₙ|·√n / (2ⁿ·n!)` for `n = 0..=max_n`, with `|S̃‖₀|` read as `1`.
pub fn enasym_ratio_sequence(max_n: usize) -> Vec<f64> {
    let inner = inner_sums(max_n);
    let binom = binomial_rows(max_n);
    (0..=max_n)
        .zip(scales(max_n))
        .map(|(n, s)| {
            let total: BigUint = (0..=n).map(|m| &binom[n][m] * &inner[m]).sum();
            (n as f64).sqrt() * div_f64(&total.into(), &s.into())
        })
        .collect()
}

/// `Qₘ`, `√m·Qₘ` and the normalized count of bounded affine permutations
/// up to `max_n`.
pub fn bounded_total_diagnostics(max_n: usize) -> Result<DiagnosticsReport> {
    if max_n < 4 {
        return Err(Error::SizeTooSmall { n: max_n, min: 4 });
    }
    let q = q_values(max_n);
    let sq = scaled_q_sequence(max_n);
    let en = enasym_ratio_sequence(max_n);
    let sequences = vec![
        DiagSequence::sample("Q", 0.0, max_n, |m| ratio_f64(&q[m])),
        DiagSequence::sample("sqrt(m)*Q", qlim_target(), max_n, |m| sq[m]),
        DiagSequence::sample("count*sqrt(n)/(2^n*n!)", enasym_target(), max_n, |n| en[n]),
    ];
    Ok(DiagnosticsReport { subject: "bounded-affine".to_string(), sequences })
}
