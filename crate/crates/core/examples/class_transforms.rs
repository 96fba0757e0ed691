//! F → G → F̃ for the built-in sum-closed classes.

use bounded_affine::series::{affine_from_class, indecomposables_from_class, Builtin, ClassSpec};

fn show(label: &str, coeffs: &[num_bigint::BigInt]) {
    let parts: Vec<String> = coeffs.iter().skip(1).map(|c| c.to_string()).collect();
    println!("  {label} {}", parts.join(", "));
}

fn main() -> Result<(), bounded_affine::Error> {
    let order = 9;
    for b in Builtin::ALL {
        let f = ClassSpec::builtin(b).f_series(order)?;
        let g = indecomposables_from_class(&f)?;
        let a = affine_from_class(&f)?;
        println!("{b}");
        show("f ", &f.to_integers().expect("integral"));
        show("g ", &g.to_integers().expect("integral"));
        show("f~", &a.to_integers().expect("integral"));
    }
    Ok(())
}
