//! Standard decomposition and block structure of an affine window.
//!
//! cargo run --example decompose_window -- "2,7,-2,-1,9,6"

use bounded_affine::AffinePerm;

fn main() -> Result<(), bounded_affine::Error> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "2,7,-2,-1,9,6".into());
    let omega: AffinePerm = text.parse()?;
    let std = omega.standard_decomposition();

    println!("window      {omega} (size {})", omega.size());
    println!("bounded     {}", omega.is_bounded());
    println!("flattened   {}", omega.window_flatten());
    println!("standard    flat={} word={:?}", std.flat, std.word);
    match omega.is_decomposable() {
        Some(d) => println!("decomposable: shift {} of the infinite sum of {}", d.shift, d.block),
        None => println!("indecomposable"),
    }
    Ok(())
}
