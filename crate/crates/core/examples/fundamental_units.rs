//! Fundamental units from the continued fraction of `√n`.
//!
//! ```text
//! cargo run --example fundamental_units [DISC...]
//! ```

use qcyclo::quadratic::fundamental_unit;
use qcyclo::Result;

fn main() -> Result<()> {
    let discs: Vec<u64> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("discriminant"))
        .collect();
    let discs = if discs.is_empty() {
        vec![5, 12, 13, 28, 44, 60, 61, 94 * 4, 1676]
    } else {
        discs
    };
    for d in discs {
        let e = fundamental_unit(d)?;
        println!("ε_{d:<5} = {e}   norm {}", e.norm());
    }
    Ok(())
}
