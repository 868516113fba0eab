//! Class numbers of imaginary and real quadratic fields.
//!
//! ```text
//! cargo run --example class_numbers
//! ```

use qcyclo::classnum::{h_imag, h_imag_8p, h_real};
use qcyclo::ntheory::{is_prime, is_squarefree};
use qcyclo::quadratic::fundamental_unit;
use qcyclo::Result;

fn main() -> Result<()> {
    println!("   n  h(−n)  h(4n)");
    for n in (7..120).step_by(4).filter(|&n| is_squarefree(n)) {
        let h4n = h_real(4 * n, &fundamental_unit(4 * n)?)?;
        println!("{n:>4}  {:>5}  {h4n:>5}", h_imag(n)?);
    }
    println!();
    println!("   p  h(−8p)");
    for p in (7..200).step_by(8).filter(|&p| is_prime(p)) {
        println!("{p:>4}  {:>6}", h_imag_8p(p)?);
    }
    Ok(())
}
