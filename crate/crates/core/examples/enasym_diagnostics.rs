//! Convergence of the normalised bounded-affine count and of √m·Qₘ.
//!
//! cargo run --release --example enasym_diagnostics -- 200

use bounded_affine::series::{bounded_total_diagnostics, subcritical_diagnostics, Builtin, ClassSpec};

fn main() -> Result<(), bounded_affine::Error> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(120);
    print!("{}", bounded_total_diagnostics(n)?);
    print!("{}", subcritical_diagnostics(&ClassSpec::builtin(Builtin::Catalan), 4 * n)?);
    Ok(())
}
