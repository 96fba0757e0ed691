//! Schema classification and block statistics.

use bounded_affine::series::{block_distribution, first_block_distribution, schema_classify, Builtin, ClassSpec};

fn main() -> Result<(), bounded_affine::Error> {
    for b in Builtin::ALL {
        let report = schema_classify(&ClassSpec::builtin(b), 64, 1e-9)?;
        println!("{b:<11} {report}");
    }

    let f = ClassSpec::builtin(Builtin::Layered).f_series(6)?;
    let chi: Vec<String> = block_distribution(&f, 6)?.iter().map(|p| p.to_string()).collect();
    println!("layered, n=6, P[blocks = k]: {}", chi.join(" "));

    let f = ClassSpec::builtin(Builtin::Catalan).f_series(8)?;
    let first: Vec<String> = first_block_distribution(&f, 8)?.iter().map(|p| p.to_string()).collect();
    println!("catalan, n=8, P[first block = j]: {}", first.join(" "));
    Ok(())
}
