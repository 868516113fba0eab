//! The product lemmas behind the closed form, checked numerically.
//!
//! ```text
//! cargo run --example lemmas [N]
//! ```

use qcyclo::ntheory::is_prime;
use qcyclo::theorem::{
    first_non_residue, verify_chapman, verify_lemma_product, verify_lemma_sn1, verify_phi_at_i,
};
use qcyclo::Result;

const PREC: u32 = 256;

fn main() -> Result<()> {
    let n: u64 = std::env::args()
        .nth(1)
        .map_or(23, |s| s.parse().expect("n"));
    let q = first_non_residue(n)?;
    println!("n = {n}, first non-residue {q}");
    println!("∏(1 − ζ^c):            {}", verify_lemma_sn1(n, 1, PREC)?);
    println!("∏(1 − ζ^(qc)):         {}", verify_lemma_sn1(n, q, PREC)?);
    println!("S_n(i) S_n(−i):        {}", verify_lemma_product(n, PREC)?);
    if is_prime(n) {
        println!("Chapman's product:     {}", verify_chapman(n, PREC)?);
    } else {
        println!("Φ_n(i) = 1:            {}", verify_phi_at_i(n, PREC)?);
    }
    Ok(())
}
