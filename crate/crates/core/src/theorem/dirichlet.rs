//! Integer coordinates of `S_p(i)` in the basis
//! `{(1 + si)/2, (1 − si)√−p/2}`, `s = (−1)^((p+1)/4)`.
//!
//! `S_p(i)` alone gives one complex equation whose two real components are
//! proportional in this basis, so the Galois conjugate `T_p(i)` (product over
//! non-residues) supplies the second equation:
//! `S(1 − si) = m + s n√p` and `T(1 − si) = m − s n√p`.

use rug::ops::Pow;
use rug::{Float, Integer};

use super::counts::require_prime_3_mod_4;
use crate::classnum::{INTEGRALITY_WINDOW_LOG2, MAX_PRECISION};
use crate::cyclotomic::numeric::MIN_PRECISION;
use crate::cyclotomic::{sn_eval_numeric, tn_eval_numeric, BigComplex, EvalPoint};
use crate::error::{Error, Result};
use crate::ntheory::neg_one_pow;

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletPair {
    pub m: Integer,
    pub n: Integer,
    /// `log2` of the larger distance of the solved coordinates from the
    /// rounded integers.
    pub residual_log2: f64,
    pub precision_bits: u32,
}

impl DirichletPair {
    pub fn is_integral(&self) -> bool {
        self.residual_log2 < INTEGRALITY_WINDOW_LOG2 as f64
    }
}

fn solve(p: u64, prec: u32) -> Result<(Float, Float)> {
    let s = neg_one_pow(((p + 1) / 4) as i64);
    let factor = BigComplex::from_f64(prec, 1.0, -s as f64);
    let r = &sn_eval_numeric(p, EvalPoint::I, prec)?.value * &factor;
    let r2 = &tn_eval_numeric(p, EvalPoint::I, prec)?.value * &factor;
    let m = Float::with_val(prec, r.re() + r2.re()) / 2;
    let root = Float::with_val(prec, p).sqrt();
    let n = Float::with_val(prec, r.re() - r2.re()) / (2 * root) * s;
    Ok((m, n))
}

/// Solves for `(m_p, n_p)`, doubling precision from `precision_bits` until
/// both coordinates lie within `2^−32` of integers.
///
/// A residual above the window at the precision cap is returned, not raised.
pub fn dirichlet_decomposition(p: u64, precision_bits: u32) -> Result<DirichletPair> {
    require_prime_3_mod_4(p)?;
    if precision_bits < MIN_PRECISION {
        return Err(Error::PrecisionTooLow(precision_bits, MIN_PRECISION));
    }
    let window = Float::with_val(64, 2).pow(INTEGRALITY_WINDOW_LOG2);
    let mut prec = precision_bits;
    loop {
        let (m, n) = solve(p, prec)?;
        let (mr, nr) = (m.clone().round(), n.clone().round());
        let dist = Float::with_val(prec, &m - &mr)
            .abs()
            .max(&Float::with_val(prec, &n - &nr).abs());
        if dist < window || prec >= MAX_PRECISION {
            let residual_log2 = if dist.is_zero() {
                -(prec as f64)
            } else {
                dist.log2().to_f64()
            };
            return Ok(DirichletPair {
                m: mr.to_integer().expect("finite"),
                n: nr.to_integer().expect("finite"),
                residual_log2,
                precision_bits: prec,
            });
        }
        prec = (prec * 2).min(MAX_PRECISION);
    }
}
