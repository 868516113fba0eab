//! Numeric checks of closed forms for products over residues.
//!
//! Every check compares at tolerance `2^−(precision/2)`.

use rug::Float;

use super::counts::require_prime_3_mod_4;
use crate::classnum::{h_imag, require_3_mod_4};
use crate::cyclotomic::poly::eval_at_i;
use crate::cyclotomic::{
    chapman_product, cyclotomic_at_numeric, cyclotomic_poly, product_one_minus_zeta,
    sn_eval_numeric, BigComplex, EvalPoint,
};
use crate::error::{invalid, Result};
use crate::ntheory::{gcd, is_prime, jacobi, neg_one_pow};

fn close(x: &BigComplex, y: &BigComplex, prec: u32) -> bool {
    let d = x.dist(y);
    d.is_zero() || d.log2().to_f64() < -((prec / 2) as f64)
}

/// `±i√n` with the given sign.
fn i_sqrt(n: u64, sign: i32, prec: u32) -> BigComplex {
    let root = Float::with_val(prec, n).sqrt() * sign;
    BigComplex::new(Float::new(prec), root)
}

/// `∏ (1 − ζ_n^(ac))` over residues `c` equals `(−1)^((h(−n)+1)/2) (a/n) √−n`
/// for prime `n` and `(−1)^(h(−n)/2)` otherwise.
pub fn verify_lemma_sn1(n: u64, a: i64, prec: u32) -> Result<bool> {
    require_3_mod_4(n)?;
    if gcd(a.unsigned_abs(), n) != 1 {
        return invalid(format!("a = {a} is not prime to n = {n}"));
    }
    let h = h_imag(n)?;
    let value = product_one_minus_zeta(n, a, prec)?.value;
    let expected = if is_prime(n) {
        i_sqrt(n, neg_one_pow(h.div_ceil(2) as i64) * jacobi(a, n)?, prec)
    } else {
        BigComplex::from_f64(prec, neg_one_pow((h / 2) as i64) as f64, 0.0)
    };
    Ok(close(&value, &expected, prec))
}

/// `S_n(i) S_n(−i)` equals `(−1)^((n+1)/4)` for prime `n` and 1 otherwise.
pub fn verify_lemma_product(n: u64, prec: u32) -> Result<bool> {
    require_3_mod_4(n)?;
    let plus = sn_eval_numeric(n, EvalPoint::I, prec)?.value;
    let minus = sn_eval_numeric(n, EvalPoint::MinusI, prec)?.value;
    let expected = if is_prime(n) {
        neg_one_pow(((n + 1) / 4) as i64)
    } else {
        1
    };
    Ok(close(
        &(&plus * &minus),
        &BigComplex::from_f64(prec, expected as f64, 0.0),
        prec,
    ))
}

/// `∏_{0<c<p/2} (1 − ζ_p^(c²)) = (−1)^((h(−p)+1)/2) √−p`.
pub fn verify_chapman(p: u64, prec: u32) -> Result<bool> {
    require_prime_3_mod_4(p)?;
    let h = h_imag(p)?;
    let value = chapman_product(p, prec)?.value;
    Ok(close(
        &value,
        &i_sqrt(p, neg_one_pow(h.div_ceil(2) as i64), prec),
        prec,
    ))
}

/// `Φ_n(i) = 1` for composite `n`, numerically and from the exact polynomial.
pub fn verify_phi_at_i(n: u64, prec: u32) -> Result<bool> {
    require_3_mod_4(n)?;
    if is_prime(n) {
        return invalid(format!("n = {n} is prime"));
    }
    let numeric = cyclotomic_at_numeric(n, EvalPoint::I, prec)?.value;
    let (re, im) = eval_at_i(&cyclotomic_poly(n));
    Ok(close(&numeric, &BigComplex::one(prec), prec) && re == 1 && im == 0)
}

/// The first `a > 1` with `(a/n) = −1`.
pub fn first_non_residue(n: u64) -> Result<i64> {
    require_3_mod_4(n)?;
    for a in 2..n as i64 {
        if jacobi(a, n)? == -1 {
            return Ok(a);
        }
    }
    unreachable!("n ≡ 3 (mod 4) has −1 as a non-residue")
}
