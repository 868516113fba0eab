//! Dirichlet's `m_p, n_p` recovered from `S_p(i)` and `T_p(i)`.
//!
//! ```text
//! cargo run --example dirichlet
//! ```

use qcyclo::ntheory::is_prime;
use qcyclo::theorem::{dirichlet_decomposition, verify, VerifyOptions};
use qcyclo::Result;

fn main() -> Result<()> {
    println!("   p  m_p  n_p  a_p  b_p");
    for p in (7..80).step_by(4).filter(|&p| is_prime(p)) {
        let d = dirichlet_decomposition(p, 256)?;
        let r = verify(p, &VerifyOptions::default())?;
        let (a, b) = r.pair().expect("pair recorded");
        println!(
            "{p:>4}  {:>3}  {:>3}  {a:>3}  {b:>3}   residual 2^{:.0}",
            d.m, d.n, d.residual_log2
        );
    }
    Ok(())
}
