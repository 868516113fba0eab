//! Congruences for fundamental units and class numbers modulo `p`.

use rug::Integer;

use super::cases::{solve_case_prime, VerifyOptions};
use super::counts::require_prime_3_mod_4;
use super::report::VerificationReport;
use crate::classnum::{h_imag, h_real};
use crate::error::{invalid, Error, Result};
use crate::ntheory::{factorial_mod, inv_mod, is_prime, isqrt, neg_one_pow};
use crate::quadratic::fundamental_unit;

/// The algebraic prime-case pipeline, failing if any identity breaks.
pub(crate) fn prime_report(p: u64) -> Result<VerificationReport> {
    let report = solve_case_prime(p, &VerifyOptions::algebraic())?;
    if !report.passed() {
        return Err(Error::CrossCheck(format!(
            "prime case at p = {p} failed: {}",
            report.failed_checks().join(", ")
        )));
    }
    Ok(report)
}

fn residue_of(x: &Integer, p: u64) -> u64 {
    let mut r = Integer::from(x % p);
    if r < 0 {
        r += p;
    }
    r.to_u64().expect("residue fits")
}

fn signed_residue(s: i32, p: u64) -> u64 {
    (s as i64).rem_euclid(p as i64) as u64
}

/// `u_p ≡ (−1)^((p+1)/4) (mod p)` for `ε_4p = u_p + v_p√p`, together with the
/// intermediate `u_p ≡ A_p (mod p)` and odd `h(4p)`.
pub fn corollary_u_congruence(p: u64) -> Result<bool> {
    Ok(u_congruence_from_report(&prime_report(p)?))
}

pub(crate) fn u_congruence_from_report(report: &VerificationReport) -> bool {
    let p = report.n;
    let s = neg_one_pow(((p + 1) / 4) as i64);
    let u = &report.unit.as_ref().expect("unit recorded").u;
    let big_a = &report.unit_power.as_ref().expect("power recorded").a;
    let h = report.h_real.expect("h recorded");
    let u_mod = residue_of(u, p);
    u_mod == signed_residue(s, p) && residue_of(big_a, p) == u_mod && h % 2 == 1
}

/// The unit half of [`corollary_u_congruence`], without computing `h(4p)`.
pub fn corollary_u_congruence_unit_only(p: u64) -> Result<bool> {
    require_prime_3_mod_4(p)?;
    let unit = fundamental_unit(4 * p)?;
    let s = neg_one_pow(((p + 1) / 4) as i64);
    Ok(residue_of(unit.a(), p) == signed_residue(s, p))
}

/// Divisibility facts tied to the Ankeny–Artin–Chowla criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AacOutcome {
    /// `p | b_p`.
    pub b_divisible: bool,
    /// `p | v_p`.
    pub v_divisible: bool,
    /// `a_p b_p ≡ −v_p h(4p) (mod p)`, `p ∤ a_p h(4p)`, and the two
    /// divisibility flags agree.
    pub consistent: bool,
}

impl AacOutcome {
    /// A counterexample to the extended conjecture.
    pub fn is_counterexample(&self) -> bool {
        self.b_divisible || self.v_divisible
    }
}

pub fn aac_check(p: u64) -> Result<AacOutcome> {
    Ok(aac_from_report(&prime_report(p)?))
}

pub(crate) fn aac_from_report(report: &VerificationReport) -> AacOutcome {
    let p = report.n;
    let (a, b) = report.pair().expect("pair recorded");
    let v = &report.unit.as_ref().expect("unit recorded").v;
    let h = report.h_real.expect("h recorded");
    let b_divisible = residue_of(b, p) == 0;
    let v_divisible = residue_of(v, p) == 0;
    let lhs = Integer::from(a * b) + Integer::from(v * h);
    let congruence = residue_of(&lhs, p) == 0;
    let units = residue_of(a, p) != 0 && !h.is_multiple_of(p);
    AacOutcome {
        b_divisible,
        v_divisible,
        consistent: congruence && units && b_divisible == v_divisible,
    }
}

/// `((p−1)/2)! ≡ (−1)^((h(−p)+1)/2) (mod p)` for primes `p ≡ 3 (mod 4)`.
pub fn mordell_congruence(p: u64) -> Result<bool> {
    require_prime_3_mod_4(p)?;
    let h = h_imag(p)?;
    let sign = neg_one_pow(h.div_ceil(2) as i64);
    Ok(h % 2 == 1 && factorial_mod((p - 1) / 2, p) == signed_residue(sign, p))
}

/// `((p−1)/2)! ≡ (−1)^((h(p)+1)/2) u_p/2 (mod p)` for primes `p ≡ 1 (mod 4)`,
/// `ε_p = (u_p + v_p√p)/2`.
pub fn chowla_congruence(p: u64) -> Result<bool> {
    if p % 4 != 1 || !is_prime(p) {
        return invalid(format!("p must be a prime ≡ 1 (mod 4), got {p}"));
    }
    let unit = fundamental_unit(p)?;
    let h = h_real(p, &unit)?;
    if h % 2 == 0 {
        return Ok(false);
    }
    let (u, _) = unit.halves();
    let sign = neg_one_pow(h.div_ceil(2) as i64);
    let half = inv_mod(2, p).expect("p is odd");
    let rhs = (residue_of(&u, p) as u128 * half as u128 % p as u128) as u64;
    let rhs = if sign == 1 { rhs } else { (p - rhs) % p };
    Ok(factorial_mod((p - 1) / 2, p) == rhs)
}

/// Compares `(−1)^((h(−p)+1)/2 · (p+1)/4) (s_p − t_p√p)` with the proven
/// `a_p + b_p√p`, where `s_p = √(A_p + (−1)^((p+1)/4))` and `t_p = B_p/s_p`.
///
/// Inexact `s_p` or `t_p` counts as a mismatch.
pub fn sun_sign_check(p: u64) -> Result<bool> {
    Ok(sun_from_report(&prime_report(p)?))
}

pub(crate) fn sun_from_report(report: &VerificationReport) -> bool {
    let p = report.n;
    let (a, b) = report.pair().expect("pair recorded");
    let power = report.unit_power.as_ref().expect("power recorded");
    let h_minus = report.h_imag.expect("h(−p) recorded");
    let e = ((p + 1) / 4) as i64;
    let (s_p, exact) = isqrt(&Integer::from(&power.a + neg_one_pow(e)));
    if !exact || s_p == 0 || !power.b.is_divisible(&s_p) {
        return false;
    }
    let t_p = Integer::from(power.b.div_exact_ref(&s_p));
    let sign = neg_one_pow(((h_minus as i64 + 1) / 2) * e);
    *a == Integer::from(&s_p * sign) && *b == Integer::from(&t_p * -sign)
}
