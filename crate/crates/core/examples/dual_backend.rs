//! `S_n(i)` from MPFR complex floats and from exact `Z[ζ_4n]` arithmetic.
//!
//! ```text
//! cargo run --example dual_backend [N]
//! ```

use qcyclo::cyclotomic::{
    cyclotomic_at_numeric, sn_eval_exact, sn_eval_numeric, sqrt_embed, EvalPoint,
};
use qcyclo::Result;

const PREC: u32 = 256;

fn main() -> Result<()> {
    let n: u64 = std::env::args()
        .nth(1)
        .map_or(15, |s| s.parse().expect("n"));
    let numeric = sn_eval_numeric(n, EvalPoint::I, PREC)?;
    let exact = sn_eval_exact(n)?;
    let (re, im) = numeric.value.to_decimal(30);
    println!(
        "numeric S_{n}(i) = {re} + {im}i  ({} factors, error ≤ 2^{:.0})",
        numeric.factors,
        numeric.error_bound_log2(n)
    );
    let (re, im) = exact.to_numeric(PREC).to_decimal(30);
    println!("exact   S_{n}(i) = {re} + {im}i");
    let dist = exact.to_numeric(PREC).dist(&numeric.value);
    println!("distance          = 2^{:.0}", dist.log2().to_f64());
    println!(
        "√{n} in Z[ζ_{}] has {} reduced coefficients",
        4 * n,
        sqrt_embed(n)?.reduce().len()
    );
    let (re, im) = cyclotomic_at_numeric(n, EvalPoint::I, PREC)?
        .value
        .to_decimal(20);
    println!("Φ_{n}(i) = {re} + {im}i");
    Ok(())
}
