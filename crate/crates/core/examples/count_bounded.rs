//! |S̃‖ₙ| by both closed sums, checked against brute force for small n.
//!
//! cargo run --release --example count_bounded -- 25

use bounded_affine::enumerate::{
    bounded_affine_counts_a, bounded_affine_counts_b, count_bounded_affine, Method, DEFAULT_CAP,
};

fn main() {
    let max_n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(15);
    let a = bounded_affine_counts_a(max_n);
    let b = bounded_affine_counts_b(max_n);
    assert_eq!(a, b);
    for (i, count) in a.iter().enumerate() {
        let n = i + 1;
        let brute = if n <= 6 {
            let c = count_bounded_affine(n, Method::Brute, DEFAULT_CAP).expect("below cap");
            format!("  (brute force {c})")
        } else {
            String::new()
        };
        println!("{n:>3}  {count}{brute}");
    }
}
