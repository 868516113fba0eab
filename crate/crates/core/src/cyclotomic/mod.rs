//! Products over roots of unity, evaluated numerically and exactly.
//!
//! [`numeric`] works with MPFR complex floats at an explicit precision.
//! [`exact`] works in `Z[ζ_m]`. The two are independent, so agreement between
//! them is a meaningful check.

pub mod exact;
pub mod gauss;
pub mod numeric;
pub mod poly;

pub use exact::{cyc_equal, gauss_sum, quad_embed, sn_eval_exact, sqrt_embed, CycElement};
pub use gauss::{gauss_decomposition, GaussDecomposition};
pub use numeric::{
    chapman_product, cyclotomic_at_numeric, product_one_minus_zeta, sn_eval_numeric,
    tn_eval_numeric, BigComplex, EvalPoint, NumericProduct,
};
pub use poly::cyclotomic_poly;
