//! Gauss's `4Φ_p(x) = Y_p(x)² − p* Z_p(x)²`, coefficients in ascending order.
//!
//! ```text
//! cargo run --example gauss_decomposition [P]
//! ```

use qcyclo::cyclotomic::gauss_decomposition;
use qcyclo::ntheory::is_prime;
use qcyclo::Result;

fn show(coeffs: &[rug::Integer]) -> String {
    let parts: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn main() -> Result<()> {
    let primes: Vec<u64> = match std::env::args().nth(1) {
        Some(p) => vec![p.parse().expect("prime")],
        None => (3..=23).filter(|&p| is_prime(p)).collect(),
    };
    for p in primes {
        let g = gauss_decomposition(p)?;
        println!("p = {p}, p* = {}", g.p_star());
        println!("  Y = {}", show(&g.y));
        println!("  Z = {}", show(&g.z));
        println!("  identity holds: {}", g.identity_holds());
    }
    Ok(())
}
