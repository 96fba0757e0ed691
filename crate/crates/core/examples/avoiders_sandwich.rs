//! |Sₙ(τ)| ≤ |S̃‖ₙ(τ)| ≤ 3ⁿ·|Sₙ(τ)| for τ = 321, 312, 231.
//!
//! The other length-3 patterns fall outside: every affine permutation
//! contains 123, so the affine counts for 123, 132 and 213 collapse.

use bounded_affine::enumerate::{count_bounded_avoiders, count_ordinary_avoiders, DEFAULT_CAP};
use bounded_affine::Perm;
use num_bigint::BigUint;

fn main() -> Result<(), bounded_affine::Error> {
    for t in ["321", "312", "231"] {
        let tau: Perm = t.parse()?;
        println!("{t}");
        for n in 1..=6 {
            let ordinary = count_ordinary_avoiders(n, std::slice::from_ref(&tau));
            let affine = count_bounded_avoiders(n, std::slice::from_ref(&tau), DEFAULT_CAP)?;
            let upper = BigUint::from(3u8).pow(n as u32) * &ordinary;
            let ok = ordinary <= affine && affine <= upper;
            println!("  n={n}  {ordinary} <= {affine} <= {upper}  {}", if ok { "ok" } else { "VIOLATED" });
        }
    }
    Ok(())
}
