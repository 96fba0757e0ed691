//! Ordinary patterns inside ordinary and affine permutations.

use bounded_affine::perm::find_occurrence;
use bounded_affine::{AffinePerm, Perm};

fn main() -> Result<(), bounded_affine::Error> {
    let host: Perm = "493125876".parse()?;
    let tau: Perm = "4123".parse()?;
    println!("{tau} in {host}: positions {:?}", find_occurrence(&tau, &host));

    let omega = AffinePerm::infinite_sum(&"243165".parse()?)?;
    println!("horizon for {omega}: {}", omega.default_horizon());
    for t in ["2143", "3142", "321", "1"] {
        let t: Perm = t.parse()?;
        match omega.find_finite_pattern(&t, None)? {
            Some(pos) => println!("  contains {t} at {pos:?}"),
            None => println!("  avoids   {t}"),
        }
    }
    Ok(())
}
