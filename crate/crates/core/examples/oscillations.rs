//! Finite oscillations, and which ones an indecomposable window contains.

use bounded_affine::affine::{finite_oscillations, oscillation};
use bounded_affine::AffinePerm;

fn main() -> Result<(), bounded_affine::Error> {
    let o = oscillation();
    println!("infinite oscillation: window {o}, bounded = {}", o.is_bounded());
    for k in 1..=8 {
        let names: Vec<String> = finite_oscillations(k).iter().map(|p| p.to_string()).collect();
        println!("  size {k}: {}", names.join(" "));
    }

    let omega: AffinePerm = "2,7,-2,-1,9,6".parse()?;
    println!("{omega} decomposable: {}", omega.is_decomposable().is_some());
    for k in 3..=8 {
        for osc in finite_oscillations(k) {
            let pos = omega.find_finite_pattern(&osc, None)?;
            println!("  {osc:<8} {pos:?}");
        }
    }
    Ok(())
}
