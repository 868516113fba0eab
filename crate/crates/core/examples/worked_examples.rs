//! The three smallest interesting cases of the closed form for `S_n(i)`.
//!
//! ```text
//! cargo run --example worked_examples
//! ```

use qcyclo::theorem::{alpha, beta, verify, CaseKind, ExactMode, VerifyOptions};
use qcyclo::{QuadNumber, Result};

fn main() -> Result<()> {
    let opts = VerifyOptions {
        exact: ExactMode::Always,
        ..VerifyOptions::default()
    };
    for n in [15, 7, 11] {
        let r = verify(n, &opts)?;
        let unit = r.unit.as_ref().expect("unit recorded");
        let (a, b) = r.pair().expect("pair recorded");
        println!("n = {n} ({:?})", r.case);
        let e = QuadNumber::new(unit.u.clone(), unit.v.clone(), n, unit.den)?;
        println!("  ε_{} = {e}", 4 * n);
        println!(
            "  h(−n) = {}, h(4n) = {}",
            r.h_imag.unwrap_or(0),
            r.h_real.unwrap_or(0)
        );
        match r.case {
            CaseKind::Composite => println!("  α = {}", alpha(n)?),
            CaseKind::Prime => println!("  β = {}", beta(n)?),
        }
        println!(
            "  a + b√n = {}",
            QuadNumber::new(a.clone(), b.clone(), n, 1)?
        );
        println!(
            "  residual 2^{:.0} at {} bits, all checks {}",
            r.residual_log2.unwrap_or(f64::NAN),
            r.precision_bits,
            if r.passed() { "pass" } else { "FAIL" }
        );
    }
    Ok(())
}
