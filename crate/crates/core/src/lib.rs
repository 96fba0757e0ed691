//! Bounded affine permutations.
//!
//! An affine permutation of size `n` is a bijection `ω: ℤ → ℤ` with
//! `ω(i + n) = ω(i) + n` whose window `ω(1), …, ω(n)` sums to
//! `n(n + 1)/2`; it is bounded when `|ω(i) − i| < n` everywhere.
//!
//! * [`perm`]: ordinary permutations, containment, sum blocks, avoiders.
//! * [`affine`]: affine permutations, standard decomposition,
//!   decomposability and finite-horizon pattern containment.
//! * [`enumerate`]: Eulerian and derangement tables, exact and brute-force
//!   counts of bounded affine permutations.
//! * [`series`]: truncated power series over ℚ, sum-closed class transforms,
//!   sequence-schema classification and asymptotic diagnostics.
//! * [`cli`]: the `affperm` command surface.

pub mod affine;
pub mod cli;
pub mod enumerate;
pub mod error;
mod pattern;
pub mod perm;
pub mod series;

pub use affine::{AffinePerm, StdDecomposition};
pub use error::{Error, Result};
pub use perm::{BlockProfile, Perm};
pub use series::Series;
