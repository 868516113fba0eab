//! MPFR-backed complex values and products over roots of unity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::Constant;
use rug::{Float, Integer};

use crate::classnum::require_3_mod_4;
use crate::error::{invalid, Error, Result};
use crate::ntheory::{gcd, is_prime, QuadraticCharacter};

/// Lowest working precision accepted by the evaluation routines.
pub const MIN_PRECISION: u32 = 64;

/// A complex number with MPFR real and imaginary parts.
///
/// Binary operations run at the larger of the operand precisions.
#[derive(Debug, Clone, PartialEq)]
pub struct BigComplex {
    re: Float,
    im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        let prec = re.prec().max(im.prec());
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Self::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_integers(prec: u32, re: &Integer, im: &Integer) -> Self {
        Self::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn real(value: Float) -> Self {
        let prec = value.prec();
        Self::new(value, Float::new(prec))
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 0.0)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 1.0)
    }

    /// `e^(2πik/m)`, computed directly from its angle.
    pub fn root_of_unity(k: i64, m: u64, prec: u32) -> Self {
        let k = k.rem_euclid(m as i64);
        // exact points avoid sin(π) ≈ 1e-prec noise
        if k == 0 {
            return Self::one(prec);
        }
        if 4 * k == m as i64 {
            return Self::i(prec);
        }
        if 2 * k == m as i64 {
            return Self::from_f64(prec, -1.0, 0.0);
        }
        if 4 * k == 3 * m as i64 {
            return Self::from_f64(prec, 0.0, -1.0);
        }
        let work = prec + 16;
        let mut angle = Float::with_val(work, Constant::Pi);
        angle *= 2 * k;
        angle /= m;
        let (sin, cos) = angle.sin_cos(Float::new(work));
        Self::new(Float::with_val(prec, cos), Float::with_val(prec, sin))
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn precision_bits(&self) -> u32 {
        self.re.prec().min(self.im.prec())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), Float::with_val(self.im.prec(), -&self.im))
    }

    pub fn scale(&self, k: &Float) -> Self {
        let prec = self.precision_bits().max(k.prec());
        Self::new(
            Float::with_val(prec, &self.re * k),
            Float::with_val(prec, &self.im * k),
        )
    }

    pub fn abs(&self) -> Float {
        let prec = self.precision_bits();
        Float::with_val(prec, self.re.hypot_ref(&self.im))
    }

    /// `|self − other|`.
    pub fn dist(&self, other: &Self) -> Float {
        (self - other).abs()
    }

    /// `log2 |self|`, `-inf` at zero.
    pub fn log2_abs(&self) -> f64 {
        let a = self.abs();
        if a.is_zero() {
            return f64::NEG_INFINITY;
        }
        a.log2().to_f64()
    }

    /// Decimal renderings of both parts with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (
            format!("{:.*}", digits, self.re),
            format!("{:.*}", digits, self.im),
        )
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_decimal(30);
        write!(f, "{re} + {im}i")
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;

    fn mul(self, rhs: &'a BigComplex) -> BigComplex {
        let prec = self.precision_bits().max(rhs.precision_bits());
        let mut re = Float::with_val(prec, &self.re * &rhs.re);
        re -= Float::with_val(prec, &self.im * &rhs.im);
        let mut im = Float::with_val(prec, &self.re * &rhs.im);
        im += Float::with_val(prec, &self.im * &rhs.re);
        BigComplex { re, im }
    }
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;

    fn add(self, rhs: &'a BigComplex) -> BigComplex {
        let prec = self.precision_bits().max(rhs.precision_bits());
        BigComplex {
            re: Float::with_val(prec, &self.re + &rhs.re),
            im: Float::with_val(prec, &self.im + &rhs.im),
        }
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;

    fn sub(self, rhs: &'a BigComplex) -> BigComplex {
        let prec = self.precision_bits().max(rhs.precision_bits());
        BigComplex {
            re: Float::with_val(prec, &self.re - &rhs.re),
            im: Float::with_val(prec, &self.im - &rhs.im),
        }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;

    fn neg(self) -> BigComplex {
        BigComplex {
            re: Float::with_val(self.re.prec(), -&self.re),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }
}

/// Where a product over residues is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalPoint {
    I,
    MinusI,
    One,
}

impl EvalPoint {
    pub fn value(self, prec: u32) -> BigComplex {
        match self {
            Self::I => BigComplex::i(prec),
            Self::MinusI => BigComplex::from_f64(prec, 0.0, -1.0),
            Self::One => BigComplex::one(prec),
        }
    }

    /// The point as a power of `ζ_4n`.
    pub fn exponent_mod_4n(self, n: u64) -> u64 {
        match self {
            Self::I => n,
            Self::MinusI => 3 * n,
            Self::One => 0,
        }
    }
}

impl std::str::FromStr for EvalPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" => Ok(Self::I),
            "-i" | "−i" => Ok(Self::MinusI),
            "1" => Ok(Self::One),
            _ => invalid(format!("evaluation point must be i, -i or 1, got {s:?}")),
        }
    }
}

/// A numerically evaluated product and its error estimate.
#[derive(Debug, Clone)]
pub struct NumericProduct {
    pub value: BigComplex,
    /// Number of factors multiplied together.
    pub factors: usize,
}

impl NumericProduct {
    /// Bound on the absolute error, as a power of two.
    ///
    /// Every factor carries at most a few ulps of relative error, so the
    /// product carries at most `factors` ulps (with a `log2(4n)` allowance
    /// for the one factor that may suffer cancellation).
    pub fn error_bound_log2(&self, n: u64) -> f64 {
        let prec = self.value.precision_bits() as f64;
        let mag = self.value.log2_abs().max(-prec);
        mag + ((self.factors.max(1) * 4) as f64).log2() + ((4 * n) as f64).log2() - prec
    }
}

fn check_precision(prec: u32) -> Result<()> {
    if prec < MIN_PRECISION {
        return Err(Error::PrecisionTooLow(prec, MIN_PRECISION));
    }
    Ok(())
}

fn product<I>(factors: I, prec: u32) -> NumericProduct
where
    I: IntoIterator<Item = BigComplex>,
{
    let mut acc = BigComplex::one(prec);
    let mut count = 0;
    for f in factors {
        acc = &acc * &f;
        count += 1;
    }
    NumericProduct {
        value: acc,
        factors: count,
    }
}

/// `∏ (at − ζ_n^c)` over `0 < c < n` with `(c/n) = class`.
fn class_product(n: u64, class: i32, at: EvalPoint, prec: u32) -> Result<NumericProduct> {
    check_precision(prec)?;
    let chi = QuadraticCharacter::jacobi(n)?;
    let point = at.value(prec);
    Ok(product(
        chi.classes(class)
            .map(|c| &point - &BigComplex::root_of_unity(c as i64, n, prec)),
        prec,
    ))
}

/// `S_n(at) = ∏ (at − ζ_n^c)` over residues `0 < c < n`.
pub fn sn_eval_numeric(n: u64, at: EvalPoint, prec: u32) -> Result<NumericProduct> {
    require_3_mod_4(n)?;
    class_product(n, 1, at, prec)
}

/// `T_n(at) = ∏ (at − ζ_n^b)` over non-residues `0 < b < n`.
pub fn tn_eval_numeric(n: u64, at: EvalPoint, prec: u32) -> Result<NumericProduct> {
    require_3_mod_4(n)?;
    class_product(n, -1, at, prec)
}

/// `∏ (1 − ζ_n^(ac))` over residues `0 < c < n`.
pub fn product_one_minus_zeta(n: u64, a: i64, prec: u32) -> Result<NumericProduct> {
    check_precision(prec)?;
    if n < 3 || n.is_multiple_of(2) {
        return invalid(format!("modulus must be odd and at least 3, got {n}"));
    }
    if gcd(a.unsigned_abs(), n) != 1 {
        return invalid(format!("a = {a} is not prime to n = {n}"));
    }
    let chi = QuadraticCharacter::jacobi(n)?;
    let one = BigComplex::one(prec);
    Ok(product(
        chi.classes(1).map(|c| {
            let k = (a as i128 * c as i128).rem_euclid(n as i128) as i64;
            &one - &BigComplex::root_of_unity(k, n, prec)
        }),
        prec,
    ))
}

/// `∏_{0<c<p/2} (1 − ζ_p^(c²))` for primes `p ≡ 3 (mod 4)`, `p > 3`.
pub fn chapman_product(p: u64, prec: u32) -> Result<NumericProduct> {
    check_precision(prec)?;
    if p <= 3 || p % 4 != 3 || !is_prime(p) {
        return invalid(format!("p must be a prime ≡ 3 (mod 4) with p > 3, got {p}"));
    }
    let one = BigComplex::one(prec);
    Ok(product(
        (1..=p / 2).map(|c| {
            let k = ((c as u128 * c as u128) % p as u128) as i64;
            &one - &BigComplex::root_of_unity(k, p, prec)
        }),
        prec,
    ))
}

/// `Φ_n(at) = ∏ (at − ζ_n^c)` over `0 < c < n` prime to `n`.
pub fn cyclotomic_at_numeric(n: u64, at: EvalPoint, prec: u32) -> Result<NumericProduct> {
    check_precision(prec)?;
    if n < 2 {
        return invalid("modulus must be at least 2");
    }
    let point = at.value(prec);
    Ok(product(
        (1..n)
            .filter(|&c| gcd(c, n) == 1)
            .map(|c| &point - &BigComplex::root_of_unity(c as i64, n, prec)),
        prec,
    ))
}
