//! Congruences for `u_p`, `((p−1)/2)!` and the sign of `s_p − t_p√p`.
//!
//! ```text
//! cargo run --example congruences
//! ```

use qcyclo::ntheory::is_prime;
use qcyclo::theorem::{
    chowla_congruence, corollary_u_congruence, mordell_congruence, sun_sign_check,
};
use qcyclo::Result;

fn main() -> Result<()> {
    println!("   p  u_p ≡ ±1  Mordell  sign");
    for p in (7..120).step_by(4).filter(|&p| is_prime(p)) {
        println!(
            "{p:>4}  {:>8}  {:>7}  {:>4}",
            corollary_u_congruence(p)?,
            mordell_congruence(p)?,
            sun_sign_check(p)?
        );
    }
    println!();
    println!("   p  Chowla");
    for p in (5..120).step_by(4).filter(|&p| is_prime(p)) {
        println!("{p:>4}  {:>6}", chowla_congruence(p)?);
    }
    Ok(())
}
