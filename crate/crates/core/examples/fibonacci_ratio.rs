//! Demo of the Fibonacci specialization for the Catalan family.
//!
//! `A_r(x)` counts binary words of length r with no two consecutive ones,
//! by their number of ones; at `x = 1` it collapses to the Fibonacci number
//! `F_{r+2}`. Plugging `x = 1` into the limit identity is not justified for
//! formal power series, but doing it anyway "derives" the golden-ratio
//! limit of Fibonacci quotients. This is a demo, not a test.

use arr_core::egf::fibonacci_specialization;
use num_rational::BigRational;

fn main() {
    println!("r   A_r(1) = F_(r+2)   F_(r+1)/F_(r+2)");
    let mut prev = None;
    for r in 0..=15usize {
        let f = fibonacci_specialization(r);
        let ratio = prev
            .map(|p: num_bigint::BigInt| {
                let q = BigRational::new(p, f.clone());
                let approx = q.numer() * num_bigint::BigInt::from(1_000_000u32) / q.denom();
                format!("{q} ≈ 0.{approx}")
            })
            .unwrap_or_default();
        println!("{r:<3} {f:<18} {ratio}");
        prev = Some(f);
    }
    println!("\nThe quotients approach (√5 − 1)/2 ≈ 0.618034.");
}
