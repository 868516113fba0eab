//! Class numbers of quadratic fields from finite character sums.
//!
//! Imaginary fields use exact integer sums over `0 < x < n/2`. Real fields
//! use the sine-quotient product `ε_D^h(D) = ∏ sin(πb/D) / ∏ sin(πc/D)`
//! (cotangents when `D = 4n`), evaluated as a sum of logarithms at escalating
//! MPFR precision and rounded to an integer.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{invalid, Error, Result};
use crate::ntheory::{factorize, is_prime, kronecker, QuadraticCharacter};
use crate::quadratic::{Discriminant, QuadNumber};

pub const START_PRECISION: u32 = 256;
pub const MAX_PRECISION: u32 = 1 << 20;
/// Distance from an integer accepted as "is that integer".
pub const INTEGRALITY_WINDOW_LOG2: i32 = -32;

pub(crate) fn require_3_mod_4(n: u64) -> Result<()> {
    if n <= 3 || n % 4 != 3 || !factorize(n).is_squarefree() {
        return invalid(format!(
            "n must be squarefree and ≡ 3 (mod 4) with n > 3, got {n}"
        ));
    }
    Ok(())
}

/// `h(−n)` for squarefree `n ≡ 3 (mod 4)`, `n > 3`.
///
/// Evaluates `Σ (x/n) − (2/n) Σ (x/n) x` over `0 < x < n/2`, and cross-checks
/// it against `Σ (x/n) / (2 − (−1)^((n+1)/4))` over the same range.
pub fn h_imag(n: u64) -> Result<u64> {
    require_3_mod_4(n)?;
    let chi = QuadraticCharacter::jacobi(n)?;
    let (mut plain, mut weighted) = (0i64, 0i64);
    for x in 1..=(n / 2) as i64 {
        let c = chi.at(x) as i64;
        plain += c;
        weighted += c * x;
    }
    if weighted % n as i64 != 0 {
        return Err(Error::CrossCheck(format!(
            "Σ (x/n)·x = {weighted} is not divisible by n = {n}"
        )));
    }
    let h = plain - 2 * weighted / n as i64;
    let divisor = if ((n + 1) / 4).is_multiple_of(2) {
        1
    } else {
        3
    };
    if plain % divisor != 0 || plain / divisor != h {
        return Err(Error::CrossCheck(format!(
            "h(−{n}): weighted sum gives {h}, plain sum gives {plain}/{divisor}"
        )));
    }
    if h <= 0 {
        return Err(Error::CrossCheck(format!("h(−{n}) = {h} is not positive")));
    }
    Ok(h as u64)
}

/// `h(−8p) = 2 Σ_{p/8 < x < 3p/8} (x/p)` for primes `p ≡ 7 (mod 8)`.
pub fn h_imag_8p(p: u64) -> Result<u64> {
    if p % 8 != 7 || !is_prime(p) {
        return invalid(format!("p must be a prime ≡ 7 (mod 8), got {p}"));
    }
    let chi = QuadraticCharacter::jacobi(p)?;
    let sum: i64 = (1..p)
        .filter(|&x| 8 * x > p && 8 * x < 3 * p)
        .map(|x| chi.at(x as i64) as i64)
        .sum();
    if sum <= 0 {
        return Err(Error::CrossCheck(format!(
            "h(−8·{p}) = {} is not positive",
            2 * sum
        )));
    }
    Ok(2 * sum as u64)
}

/// `h(−n) ≡ φ(n)/2 (mod 2)`.
pub fn parity_check(n: u64) -> Result<bool> {
    let h = h_imag(n)?;
    let phi = factorize(n).euler_phi();
    Ok(h % 2 == (phi / 2) % 2)
}

/// Sum of log-terms whose value is `h(D) · log ε_D`.
fn log_product(disc: Discriminant, prec: u32) -> Result<Float> {
    let d = disc.value();
    let pi = Float::with_val(prec, Constant::Pi);
    let mut total = Float::with_val(prec, 0);
    let mut plus = 0u64;
    match disc {
        Discriminant::Even { m } => {
            // ∏ cot(πc/4m) over 0 < c < 2m with (4m/c) = +1
            for c in 1..2 * m {
                if kronecker(d as i64, c as i64) != 1 {
                    continue;
                }
                plus += 1;
                let angle = Float::with_val(prec, &pi * c) / d;
                let (sin, cos) = angle.sin_cos(Float::new(prec));
                total += (cos / sin).ln();
            }
        }
        Discriminant::Odd { .. } => {
            for c in 1..=d / 2 {
                let chi = kronecker(d as i64, c as i64);
                if chi == 0 {
                    continue;
                }
                let angle = Float::with_val(prec, &pi * c) / d;
                let term = angle.sin().ln();
                if chi == 1 {
                    plus += 1;
                    total -= term;
                } else {
                    total += term;
                }
            }
        }
    }
    // #{0 < c < D/2 : (D/c) = +1} = φ(D)/4; for D = 4n this is φ(n)/2
    let expected = factorize(d).euler_phi() / 4;
    if plus != expected {
        return Err(Error::CrossCheck(format!(
            "D = {d}: {plus} residues below D/2, expected φ(D)/4 = {expected}"
        )));
    }
    Ok(total)
}

/// `h(D)` for a positive fundamental discriminant, given `ε_D`.
///
/// The quotient `Σ log-terms / log ε_D` is recomputed at doubled precision
/// until it lies within 2^−32 of an integer.
pub fn h_real(disc: u64, unit: &QuadNumber) -> Result<u64> {
    let parsed = Discriminant::parse(disc)?;
    if unit.radicand() != parsed.radicand() {
        return Err(Error::RadicandMismatch(unit.radicand(), parsed.radicand()));
    }
    let norm = unit.norm();
    if norm != 1 && norm != -1 {
        return invalid(format!("{unit} is not a unit"));
    }
    if unit.a() <= &0 || unit.b() <= &0 {
        return invalid(format!("{unit} is not a unit greater than 1"));
    }
    let window = Float::with_val(64, 2).pow(INTEGRALITY_WINDOW_LOG2);
    let mut prec = START_PRECISION;
    while prec <= MAX_PRECISION {
        let total = log_product(parsed, prec)?;
        let log_eps = unit.to_float(prec).ln();
        let quotient = total / log_eps;
        let rounded = quotient.clone().round();
        if Float::with_val(prec, &quotient - &rounded).abs() < window {
            let h = rounded.to_integer().expect("finite");
            return match h.to_u64() {
                Some(h) if h >= 1 => Ok(h),
                _ => Err(Error::CrossCheck(format!(
                    "h({disc}) = {h} is not positive"
                ))),
            };
        }
        prec *= 2;
    }
    Err(Error::NoConvergence(MAX_PRECISION))
}
