//! The two cases of the closed form for `S_n(i)`.
//!
//! Composite `n`: `S_n(i) = (−1)^(φ(n)/8 + α(n)) · ε_4n^(−h(4n)/2)`.
//! Prime `p`: `(i − (2/p)) S_p(i) = a_p + b_p√p` with
//! `a_p² + p b_p² = 2A_p`, `a_p² − p b_p² = 2(2/p)`, `A_p + B_p√p = ε_4p^h(4p)`.

use std::time::Instant;

use rug::{Float, Integer};

use super::counts::{alpha, beta, delta4n, lambda4n, require_prime_3_mod_4};
use super::report::{CaseKind, UnitPower, UnitRecord, VerificationReport};
use crate::classnum::{h_imag, h_real, require_3_mod_4};
use crate::cyclotomic::{
    cyc_equal, quad_embed, sn_eval_exact, sn_eval_numeric, BigComplex, CycElement, EvalPoint,
};
use crate::error::{invalid, Result};
use crate::ntheory::{euler_phi, is_prime, isqrt, jacobi, neg_one_pow};
use crate::quadratic::{fundamental_unit, QuadNumber};

/// Absolute tolerance of every numeric comparison, as a power of two.
pub const NUMERIC_TOLERANCE_LOG2: i32 = -64;
/// Guard bits added on top of the answer's size when choosing precision.
pub const ANSWER_GUARD_BITS: u32 = 128;
/// Largest `n` for which [`ExactMode::Auto`] runs the exact backend.
pub const EXACT_AUTO_LIMIT: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExactMode {
    /// Exact check for `n ≤ EXACT_AUTO_LIMIT`.
    #[default]
    Auto,
    Always,
    Never,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Floor on the working precision; raised to fit the answer.
    pub precision_bits: u32,
    pub exact: ExactMode,
    /// Run the numeric comparisons. Off gives the purely algebraic pipeline.
    pub numeric: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            precision_bits: 256,
            exact: ExactMode::Auto,
            numeric: true,
        }
    }
}

impl VerifyOptions {
    /// Exact integer identities only: no floats, no `Z[ζ]` arithmetic.
    pub fn algebraic() -> Self {
        Self {
            precision_bits: 256,
            exact: ExactMode::Never,
            numeric: false,
        }
    }

    fn wants_exact(&self, n: u64) -> bool {
        match self.exact {
            ExactMode::Auto => n <= EXACT_AUTO_LIMIT,
            ExactMode::Always => true,
            ExactMode::Never => false,
        }
    }

    /// `max(floor, bits(answer) + 128) + 64`.
    pub fn working_precision(&self, answer_bits: u32) -> u32 {
        self.precision_bits.max(answer_bits + ANSWER_GUARD_BITS) + 64
    }
}

/// `γ(4n)` as `(re, im)`: `i − (2/n)` for prime `n`, `1` otherwise.
pub fn gamma4n(n: u64) -> Result<(i32, i32)> {
    require_3_mod_4(n)?;
    if is_prime(n) {
        Ok((-jacobi(2, n)?, 1))
    } else {
        Ok((1, 0))
    }
}

/// Dispatches on primality after validating `n`.
pub fn verify(n: u64, opts: &VerifyOptions) -> Result<VerificationReport> {
    require_3_mod_4(n)?;
    if is_prime(n) {
        solve_case_prime(n, opts)
    } else {
        solve_case_composite(n, opts)
    }
}

fn residual_log2(dist: &Float, prec: u32) -> f64 {
    if dist.is_zero() {
        -(prec as f64)
    } else {
        dist.clone().log2().to_f64()
    }
}

fn within_tolerance(log2: f64) -> bool {
    log2 < NUMERIC_TOLERANCE_LOG2 as f64
}

fn max_residual(report: &mut VerificationReport, log2: f64) {
    report.residual_log2 = Some(report.residual_log2.map_or(log2, |r| r.max(log2)));
}

fn quad_to_complex(x: &QuadNumber, prec: u32) -> BigComplex {
    BigComplex::real(x.to_float(prec))
}

/// Theorem case for composite squarefree `n ≡ 3 (mod 4)`.
pub fn solve_case_composite(n: u64, opts: &VerifyOptions) -> Result<VerificationReport> {
    require_3_mod_4(n)?;
    if is_prime(n) {
        return invalid(format!("n = {n} is prime"));
    }
    let start = Instant::now();
    let mut report = VerificationReport::new(n, CaseKind::Composite, opts.precision_bits);
    let unit = fundamental_unit(4 * n)?;
    let h = h_real(4 * n, &unit)?;
    let phi = euler_phi(n);
    let al = alpha(n)?;
    let (de, la) = (delta4n(n)?, lambda4n(n)?);
    report.h_imag = Some(h_imag(n)?);
    report.h_real = Some(h);
    report.unit = Some(UnitRecord::from(&unit));
    report.alpha = Some(al);
    report.delta = Some(de);
    report.lambda = Some(la);
    report.check("sign_parity", neg_one_pow((phi / 4 + de + la) as i64) == 1);
    report.check("phi_div_8", phi.is_multiple_of(8));
    if !report.check("h_even", h % 2 == 0) {
        report.elapsed_ms = start.elapsed().as_millis() as u64;
        return Ok(report);
    }

    let half = unit.pow(h / 2);
    let sign = neg_one_pow((phi / 8 + al) as i64);
    report.signs.insert("phi/8+alpha".into(), sign);
    // ε^(−h/2) = conj(ε^(h/2)) since the norm is +1
    let a = Integer::from(half.a() * sign);
    let b = Integer::from(half.b() * -sign);
    report.unit_power = Some(UnitPower {
        a: half.a().clone(),
        b: half.b().clone(),
        exponent: h / 2,
    });
    let pell = Integer::from(a.square_ref()) - Integer::from(b.square_ref()) * n;
    report.check("pell_exact", pell == 1 && a != 0 && b != 0);
    let target = QuadNumber::new(a.clone(), b.clone(), n, 1)?;

    if opts.numeric {
        let prec = opts.working_precision(half.a().significant_bits());
        report.precision_bits = prec;
        let s = sn_eval_numeric(n, EvalPoint::I, prec)?.value;
        let r = residual_log2(&s.dist(&quad_to_complex(&target, prec)), prec);
        max_residual(&mut report, r);
        report.check("numeric_match", within_tolerance(r));
    }
    if opts.wants_exact(n) {
        let s = sn_eval_exact(n)?;
        report.check("exact_match", cyc_equal(&s, &quad_embed(&target)?)?);
    }
    report.a = Some(a);
    report.b = Some(b);
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// `(i − s) · x` in `Z[ζ_4p]` with `i = ζ_4p^p`.
fn times_gamma_exact(x: &CycElement, p: u64, s: i32) -> CycElement {
    if s == 1 {
        x.mul_binomial(p as i64, 0)
    } else {
        &x.shift(p as i64) + x
    }
}

/// Theorem case for primes `p ≡ 3 (mod 4)`, `p > 3`.
pub fn solve_case_prime(p: u64, opts: &VerifyOptions) -> Result<VerificationReport> {
    require_prime_3_mod_4(p)?;
    let start = Instant::now();
    let mut report = VerificationReport::new(p, CaseKind::Prime, opts.precision_bits);
    let s = jacobi(2, p)?;
    let unit = fundamental_unit(4 * p)?;
    let h = h_real(4 * p, &unit)?;
    let be = beta(p)?;
    let (de, la) = (delta4n(p)?, lambda4n(p)?);
    report.h_imag = Some(h_imag(p)?);
    report.h_real = Some(h);
    report.unit = Some(UnitRecord::from(&unit));
    report.alpha = Some(alpha(p)?);
    report.beta = Some(be);
    report.delta = Some(de);
    report.lambda = Some(la);
    report.signs.insert("2/p".into(), s);
    report.check("parity_relation", (de + la) % 2 == ((p + 5) / 4) % 2);
    if !report.check("h_odd", h % 2 == 1) {
        report.elapsed_ms = start.elapsed().as_millis() as u64;
        return Ok(report);
    }

    let power = unit.pow(h);
    let (big_a, big_b) = (power.a().clone(), power.b().clone());
    report.unit_power = Some(UnitPower {
        a: big_a.clone(),
        b: big_b.clone(),
        exponent: h,
    });
    // a² = A + s and p b² = A − s
    let (a_abs, a_exact) = isqrt(&Integer::from(&big_a + s));
    let rest = Integer::from(&big_a - s);
    let pz = Integer::from(p);
    let divisible = report.check("b_extraction_divisible", rest.is_divisible(&pz));
    let (b_abs, b_exact) = if divisible {
        isqrt(&rest.div_exact(&pz))
    } else {
        (Integer::new(), false)
    };
    if !report.check("isqrt_exact", a_exact && b_exact) {
        report.elapsed_ms = start.elapsed().as_millis() as u64;
        return Ok(report);
    }
    let sign_a = neg_one_pow(be as i64 + 1);
    let sign_b = neg_one_pow(be as i64);
    report.signs.insert("a".into(), sign_a);
    report.signs.insert("b".into(), sign_b);
    let a = a_abs * sign_a;
    let b = b_abs * sign_b;
    let (a2, pb2) = (
        Integer::from(a.square_ref()),
        Integer::from(b.square_ref()) * p,
    );
    report.check("pell_exact", Integer::from(&a2 - &pb2) == 2 * s);
    report.check(
        "pell_sum",
        Integer::from(&a2 + &pb2) == Integer::from(&big_a * 2),
    );
    let target = QuadNumber::new(a.clone(), b.clone(), p, 1)?;

    if opts.numeric {
        let prec = opts.working_precision(big_a.significant_bits());
        report.precision_bits = prec;
        let sp = sn_eval_numeric(p, EvalPoint::I, prec)?.value;
        let gamma = BigComplex::from_f64(prec, -s as f64, 1.0);
        let r = residual_log2(&(&gamma * &sp).dist(&quad_to_complex(&target, prec)), prec);
        max_residual(&mut report, r);
        report.check("numeric_match", within_tolerance(r));

        // S_p(i)² ε^h = i^((p+3)/2)
        let eps_h = BigComplex::real(power.to_float(prec));
        let lhs = &(&sp * &sp) * &eps_h;
        let rhs = BigComplex::root_of_unity(((p + 3) / 2) as i64, 4, prec);
        let r = residual_log2(&lhs.dist(&rhs), prec);
        max_residual(&mut report, r);
        report.check("square_identity", within_tolerance(r));
    }
    if opts.wants_exact(p) {
        let lhs = times_gamma_exact(&sn_eval_exact(p)?, p, s);
        report.check("exact_match", cyc_equal(&lhs, &quad_embed(&target)?)?);
    }
    report.a = Some(a);
    report.b = Some(b);
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
