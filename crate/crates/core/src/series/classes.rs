use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use super::{class_from_indecomposables, indecomposables_from_class, Scalar, Series};
use crate::error::{Error, Result};

/// Built-in sum-closed classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `Av(231)`, counted by the Catalan numbers.
    Catalan,
    /// Layered permutations, direct sums of decreasing runs.
    Layered,
    /// Separable permutations, `Av(2413, 3142)`.
    Separable,
    /// `Av(3142)`.
    S3142,
    /// Sums of the blocks `1` and `21`.
    Fibonacci2,
    /// All permutations.
    Full,
    /// A class with `G(r) = 1` exactly at its radius.
    Critical,
}

impl Builtin {
    pub const ALL: [Builtin; 7] = [
        Builtin::Catalan,
        Builtin::Layered,
        Builtin::Separable,
        Builtin::S3142,
        Builtin::Fibonacci2,
        Builtin::Full,
        Builtin::Critical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Catalan => "catalan",
            Builtin::Layered => "layered",
            Builtin::Separable => "separable",
            Builtin::S3142 => "s3142",
            Builtin::Fibonacci2 => "fibonacci2",
            Builtin::Full => "full",
            Builtin::Critical => "critical",
        }
    }

    fn g_extra() -> [(usize, i64); 6] {
        [(3, 1), (4, 8), (5, 57), (6, 419), (7, 3315), (8, 6084)]
    }

    fn closed_form(self) -> Option<ClosedForm> {
        let cf = match self {
            Builtin::Catalan => ClosedForm {
                radius: Scalar::exact(1, 4),
                tau: Scalar::exact(1, 2),
                g: |x| (1.0 - (1.0 - 4.0 * x).sqrt()) / 2.0,
            },
            Builtin::Layered => ClosedForm { radius: Scalar::exact(1, 1), tau: Scalar::Infinite, g: |x| x / (1.0 - x) },
            Builtin::Separable => {
                let r = 3.0 - 2.0 * 2f64.sqrt();
                ClosedForm {
                    radius: Scalar::Approx(r),
                    tau: Scalar::Approx(1.0 - 1.0 / 2f64.sqrt()),
                    g: |x| 1.0 - 2.0 / (3.0 - x - (1.0 - 6.0 * x + x * x).max(0.0).sqrt()),
                }
            }
            Builtin::S3142 => ClosedForm {
                radius: Scalar::exact(1, 8),
                tau: Scalar::exact(5, 32),
                g: |x| {
                    if x == 0.0 {
                        return 0.0;
                    }
                    let p = (1.0 - 8.0 * x).max(0.0).powf(1.5);
                    1.0 - (1.0 + 20.0 * x - 8.0 * x * x - p) / (32.0 * x)
                },
            },
            Builtin::Fibonacci2 => ClosedForm { radius: Scalar::Infinite, tau: Scalar::Infinite, g: |x| x + x * x },
            Builtin::Full => return None,
            Builtin::Critical => ClosedForm {
                radius: Scalar::exact(1, 4),
                tau: Scalar::exact(1, 1),
                g: |x| {
                    (1.0 - (1.0 - 4.0 * x).max(0.0).sqrt()) / 2.0
                        + Builtin::g_extra().iter().map(|&(n, c)| c as f64 * x.powi(n as i32)).sum::<f64>()
                },
            },
        };
        Some(cf)
    }

    /// `f₀ … f_order`, or `g₀ … g_order` when `generates_g`.
    fn coefficients(self, order: usize) -> Vec<BigInt> {
        match self {
            Builtin::Catalan => catalan(order + 1),
            Builtin::Layered => {
                (0..=order).map(|n| if n == 0 { BigInt::one() } else { BigInt::one() << (n - 1) }).collect()
            }
            Builtin::Separable => {
                // Large Schröder numbers, shifted by one.
                let mut r: Vec<BigInt> = vec![BigInt::one(), BigInt::from(2)];
                for n in 2..order {
                    let next = (BigInt::from(3 * (2 * n - 1)) * &r[n - 1] - BigInt::from(n - 2) * &r[n - 2])
                        / BigInt::from(n + 1);
                    r.push(next);
                }
                let mut f = vec![BigInt::one()];
                f.extend(r.into_iter().take(order));
                f
            }
            Builtin::S3142 => s3142(order),
            Builtin::Fibonacci2 => (0..=order).map(|n| BigInt::from((n == 1 || n == 2) as u8)).collect(),
            Builtin::Full => {
                let mut f = vec![BigInt::one()];
                for n in 1..=order {
                    let next = &f[n - 1] * n;
                    f.push(next);
                }
                f
            }
            Builtin::Critical => {
                let mut g = vec![BigInt::zero()];
                g.extend(catalan(order));
                for (n, c) in Builtin::g_extra() {
                    if n <= order {
                        g[n] += c;
                    }
                }
                g
            }
        }
    }

    fn generates_g(self) -> bool {
        matches!(self, Builtin::Fibonacci2 | Builtin::Critical)
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "critical-example" => Ok(Builtin::Critical),
            _ => Builtin::ALL
                .into_iter()
                .find(|b| b.name() == s)
                .ok_or_else(|| Error::InvalidClass(format!("unknown class {s:?}"))),
        }
    }
}

/// `C₀ … C_{len−1}`.
fn catalan(len: usize) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = Vec::with_capacity(len);
    for n in 0..len {
        if n == 0 {
            c.push(BigInt::one());
        } else {
            let next = &c[n - 1] * BigInt::from(2 * (2 * n - 1)) / BigInt::from(n + 1);
            c.push(next);
        }
    }
    c
}

/// `F = 32x / (1 + 20x − 8x² − (1 − 8x)^{3/2})`.
fn s3142(order: usize) -> Vec<BigInt> {
    let len = (order + 2).max(3);
    let mut p: Vec<BigRational> = Vec::with_capacity(len);
    p.push(BigRational::one());
    let three_halves = BigRational::new(3.into(), 2.into());
    for n in 1..len {
        let k = BigRational::from_integer(BigInt::from(n - 1));
        let step = (&three_halves - k) * BigRational::from_integer(BigInt::from(-8)) / BigInt::from(n);
        let next = &p[n - 1] * step;
        p.push(next);
    }
    let mut d: Vec<BigRational> = p.into_iter().map(|c| -c).collect();
    d[0] += BigRational::one();
    d[1] += BigRational::from_integer(20.into());
    d[2] -= BigRational::from_integer(8.into());
    let quotient = Series::new(d[1..].to_vec());
    let f = quotient.reciprocal().expect("nonzero linear term").scale(&BigRational::from_integer(32.into()));
    f.to_integers().expect("integral").into_iter().take(order + 1).collect()
}

/// `G` as a floating-point function together with its radius and limit.
#[derive(Clone, Copy, Debug)]
pub struct ClosedForm {
    pub radius: Scalar,
    /// `τ = G(r⁻)`.
    pub tau: Scalar,
    /// `G(x)` for `0 <= x < r`.
    pub g: fn(f64) -> f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Source {
    Builtin(Builtin),
    F(Vec<BigInt>),
    G(Vec<BigInt>),
}

/// A sum-closed class given by its counting sequence or its indecomposables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpec {
    name: String,
    source: Source,
}

impl ClassSpec {
    pub fn builtin(b: Builtin) -> Self {
        ClassSpec { name: b.name().to_string(), source: Source::Builtin(b) }
    }

    /// From `f₀, f₁, …`; requires `f₀ = 1`.
    pub fn from_f(name: impl Into<String>, f: Vec<BigInt>) -> Result<Self> {
        if f.first() != Some(&BigInt::one()) {
            return Err(Error::InvalidClass("f must start with 1".into()));
        }
        Ok(ClassSpec { name: name.into(), source: Source::F(f) })
    }

    /// From `g₀, g₁, …`; requires `g₀ = 0`.
    pub fn from_g(name: impl Into<String>, g: Vec<BigInt>) -> Result<Self> {
        if g.first() != Some(&BigInt::zero()) {
            return Err(Error::InvalidClass("g must start with 0".into()));
        }
        Ok(ClassSpec { name: name.into(), source: Source::G(g) })
    }

    /// `{"name": ..., "f": [...]}` or `{"name": ..., "g": [...]}`.
    /// Entries may be JSON integers or decimal strings.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::InvalidClass(e.to_string()))?;
        let obj = v.as_object().ok_or_else(|| Error::InvalidClass("expected a JSON object".into()))?;
        let name = obj.get("name").and_then(Value::as_str).unwrap_or("file").to_string();
        match (obj.get("f"), obj.get("g")) {
            (Some(f), None) => ClassSpec::from_f(name, json_integers(f)?),
            (None, Some(g)) => ClassSpec::from_g(name, json_integers(g)?),
            _ => Err(Error::InvalidClass("exactly one of \"f\" and \"g\" is required".into())),
        }
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::InvalidClass(format!("{}: {e}", path.display())))?;
        ClassSpec::from_json(&text)
    }

    /// A built-in name, or `file:<path>`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.strip_prefix("file:") {
            Some(path) => ClassSpec::from_file(path),
            None => Ok(ClassSpec::builtin(s.parse()?)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn as_builtin(&self) -> Option<Builtin> {
        match self.source {
            Source::Builtin(b) => Some(b),
            _ => None,
        }
    }

    pub fn closed_form(&self) -> Option<ClosedForm> {
        self.as_builtin().and_then(Builtin::closed_form)
    }

    /// Largest order available, if the class is given by finitely many terms.
    pub fn max_order(&self) -> Option<usize> {
        match &self.source {
            Source::Builtin(_) => None,
            Source::F(c) | Source::G(c) => Some(c.len() - 1),
        }
    }

    fn check_order(&self, order: usize) -> Result<()> {
        match self.max_order() {
            Some(m) if m < order => Err(Error::TooFewTerms { min: order + 1, got: m + 1 }),
            _ => Ok(()),
        }
    }

    /// `F(x)` through `order`.
    pub fn f_series(&self, order: usize) -> Result<Series> {
        self.check_order(order)?;
        match &self.source {
            Source::Builtin(b) if b.generates_g() => {
                class_from_indecomposables(&Series::from_integers(b.coefficients(order)))
            }
            Source::Builtin(b) => Ok(Series::from_integers(b.coefficients(order))),
            Source::F(f) => Ok(Series::from_integers(f[..=order].iter().cloned())),
            Source::G(g) => class_from_indecomposables(&Series::from_integers(g[..=order].iter().cloned())),
        }
    }

    /// `G(x)` through `order`.
    pub fn g_series(&self, order: usize) -> Result<Series> {
        self.check_order(order)?;
        match &self.source {
            Source::Builtin(b) if b.generates_g() => Ok(Series::from_integers(b.coefficients(order))),
            Source::G(g) => Ok(Series::from_integers(g[..=order].iter().cloned())),
            _ => indecomposables_from_class(&self.f_series(order)?),
        }
    }
}

fn json_integers(v: &Value) -> Result<Vec<BigInt>> {
    let arr = v.as_array().ok_or_else(|| Error::InvalidClass("coefficients must be an array".into()))?;
    if arr.is_empty() {
        return Err(Error::InvalidClass("coefficient array is empty".into()));
    }
    arr.iter()
        .map(|x| match x {
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .or_else(|| n.as_u64().map(BigInt::from))
                .ok_or_else(|| Error::InvalidClass(format!("not an integer: {n}"))),
            Value::String(s) => s.parse::<BigInt>().map_err(|_| Error::InvalidClass(format!("not an integer: {s:?}"))),
            other => Err(Error::InvalidClass(format!("not an integer: {other}"))),
        })
        .collect()
}
