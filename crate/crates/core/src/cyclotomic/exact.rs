//! Exact elements of `Z[ζ_m]` stored in `Z[x]/(x^m − 1)`.
//!
//! Vectors are never reduced during arithmetic. Equality and integrality
//! questions go through the remainder modulo `Φ_m`, which is monic, so the
//! remainder stays integral.

use std::ops::{Add, Mul, Neg, Sub};

use rug::{Assign, Float, Integer};

use super::numeric::BigComplex;
use super::poly::cyclotomic_poly_i64;
use crate::classnum::require_3_mod_4;
use crate::error::{invalid, Error, Result};
use crate::ntheory::{gcd, QuadraticCharacter};
use crate::quadratic::QuadNumber;

/// Largest `n` accepted by [`sn_eval_exact`] and [`sqrt_embed`].
pub const EXACT_N_LIMIT: u64 = 1000;

/// `Σ coeffs[k] ζ_m^k` with `coeffs.len() == m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycElement {
    m: usize,
    coeffs: Vec<Integer>,
}

impl CycElement {
    pub fn zero(m: usize) -> Self {
        assert!(m >= 1, "modulus must be positive");
        Self {
            m,
            coeffs: vec![Integer::new(); m],
        }
    }

    pub fn from_integer(m: usize, value: impl Into<Integer>) -> Self {
        let mut out = Self::zero(m);
        out.coeffs[0] = value.into();
        out
    }

    pub fn one(m: usize) -> Self {
        Self::from_integer(m, 1)
    }

    /// `c · ζ_m^k`.
    pub fn monomial(m: usize, k: i64, c: impl Into<Integer>) -> Self {
        let mut out = Self::zero(m);
        out.coeffs[k.rem_euclid(m as i64) as usize] = c.into();
        out
    }

    /// Panics unless `coeffs.len() == m`.
    pub fn from_coeffs(m: usize, coeffs: Vec<Integer>) -> Self {
        assert_eq!(coeffs.len(), m, "coefficient vector length must equal m");
        Self { m, coeffs }
    }

    pub fn modulus(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    fn same_modulus(&self, other: &Self) {
        assert_eq!(
            self.m, other.m,
            "CycElement modulus mismatch: {} vs {}",
            self.m, other.m
        );
    }

    /// `self · ζ_m^k`, a cyclic shift.
    pub fn shift(&self, k: i64) -> Self {
        let k = k.rem_euclid(self.m as i64) as usize;
        let mut coeffs = vec![Integer::new(); self.m];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[(j + k) % self.m] = c.clone();
        }
        Self { m: self.m, coeffs }
    }

    /// `self · (ζ_m^a − ζ_m^b)`.
    pub fn mul_binomial(&self, a: i64, b: i64) -> Self {
        let m = self.m as i64;
        let (a, b) = (a.rem_euclid(m) as usize, b.rem_euclid(m) as usize);
        let mut coeffs = vec![Integer::new(); self.m];
        for (j, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            coeffs[(j + a) % self.m] += c;
            coeffs[(j + b) % self.m] -= c;
        }
        Self { m: self.m, coeffs }
    }

    pub fn scale(&self, k: &Integer) -> Self {
        Self {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| Integer::from(c * k)).collect(),
        }
    }

    /// Image under `ζ_m ↦ ζ_m^a`, for `a` prime to `m`.
    pub fn galois(&self, a: i64) -> Result<Self> {
        let m = self.m as i64;
        let a = a.rem_euclid(m);
        if gcd(a as u64, m as u64) != 1 {
            return invalid(format!("{a} is not prime to the modulus {m}"));
        }
        let mut coeffs = vec![Integer::new(); self.m];
        for (j, c) in self.coeffs.iter().enumerate() {
            let k = (j as i128 * a as i128).rem_euclid(m as i128) as usize;
            coeffs[k] += c;
        }
        Ok(Self { m: self.m, coeffs })
    }

    /// Remainder modulo `Φ_m`, of length `φ(m)` with trailing zeros kept.
    pub fn reduce(&self) -> Vec<Integer> {
        let phi = cyclotomic_poly_i64(self.m as u64);
        let deg = phi.len() - 1;
        let terms: Vec<(usize, i64)> = phi[..deg]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, c))
            .collect();
        let mut rem = self.coeffs.clone();
        // x^k ≡ −Σ_{j<deg} φ_j x^(k−deg+j)
        for k in (deg..self.m).rev() {
            if rem[k] == 0 {
                continue;
            }
            let c = std::mem::take(&mut rem[k]);
            for &(j, pj) in &terms {
                rem[k - deg + j] -= Integer::from(&c * pj);
            }
        }
        rem.truncate(deg);
        rem
    }

    pub fn is_zero(&self) -> bool {
        self.reduce().iter().all(|c| *c == 0)
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_rational_integer(&self) -> Option<Integer> {
        let r = self.reduce();
        if r[1..].iter().all(|c| *c == 0) {
            Some(r[0].clone())
        } else {
            None
        }
    }

    /// Complex embedding `ζ_m ↦ e^(2πi/m)` with absolute error below `2^−prec`
    /// relative to the result's magnitude.
    pub fn to_numeric(&self, prec: u32) -> BigComplex {
        let reduced = self.reduce();
        let max_bits = reduced
            .iter()
            .map(|c| c.significant_bits())
            .max()
            .unwrap_or(0);
        let log_m = 64 - (self.m as u64).leading_zeros();
        let mut work = prec + max_bits + log_m + 32;
        let first = embed(&reduced, self.m, work);
        let mag = first.log2_abs();
        if mag.is_finite() && mag < 0.0 {
            // small results lose −log2|value| bits to cancellation
            work += (-mag).ceil() as u32;
            let second = embed(&reduced, self.m, work);
            return round_to(&second, prec);
        }
        round_to(&first, prec)
    }
}

fn embed(coeffs: &[Integer], m: usize, prec: u32) -> BigComplex {
    let mut acc = BigComplex::zero(prec);
    for (k, c) in coeffs.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let z = BigComplex::root_of_unity(k as i64, m as u64, prec);
        acc = &acc + &z.scale(&Float::with_val(prec, c));
    }
    acc
}

fn round_to(x: &BigComplex, prec: u32) -> BigComplex {
    BigComplex::new(Float::with_val(prec, x.re()), Float::with_val(prec, x.im()))
}

impl<'a> Add<&'a CycElement> for &'a CycElement {
    type Output = CycElement;

    fn add(self, rhs: &'a CycElement) -> CycElement {
        self.same_modulus(rhs);
        CycElement {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| Integer::from(x + y))
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CycElement> for &'a CycElement {
    type Output = CycElement;

    fn sub(self, rhs: &'a CycElement) -> CycElement {
        self.same_modulus(rhs);
        CycElement {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| Integer::from(x - y))
                .collect(),
        }
    }
}

impl<'a> Mul<&'a CycElement> for &'a CycElement {
    type Output = CycElement;

    /// Cyclic convolution.
    fn mul(self, rhs: &'a CycElement) -> CycElement {
        self.same_modulus(rhs);
        let m = self.m;
        let mut coeffs = vec![Integer::new(); m];
        let mut tmp = Integer::new();
        for (i, x) in self.coeffs.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if *y == 0 {
                    continue;
                }
                tmp.assign(x * y);
                coeffs[(i + j) % m] += &tmp;
            }
        }
        CycElement { m, coeffs }
    }
}

impl Neg for &CycElement {
    type Output = CycElement;

    fn neg(self) -> CycElement {
        CycElement {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| Integer::from(-c)).collect(),
        }
    }
}

/// Whether `u − v` vanishes modulo `Φ_m`.
pub fn cyc_equal(u: &CycElement, v: &CycElement) -> Result<bool> {
    if u.m != v.m {
        return Err(Error::ModulusMismatch(u.m, v.m));
    }
    Ok((u - v).is_zero())
}

/// `Σ_{0<t<n} (t/n) ζ_n^t` as an element of modulus `n`.
pub fn gauss_sum(n: u64) -> Result<CycElement> {
    let chi = QuadraticCharacter::jacobi(n)?;
    let mut out = CycElement::zero(n as usize);
    for t in 1..n {
        out.coeffs[t as usize] = Integer::from(chi.at(t as i64));
    }
    Ok(out)
}

fn require_exact_size(n: u64) -> Result<()> {
    if n > EXACT_N_LIMIT {
        return Err(Error::SizeCap(format!(
            "exact arithmetic is capped at n ≤ {EXACT_N_LIMIT}, got {n}"
        )));
    }
    Ok(())
}

/// Exact `S_n(i)` in `Z[ζ_4n]`, with `i = ζ_4n^n` and `ζ_n = ζ_4n^4`.
pub fn sn_eval_exact(n: u64) -> Result<CycElement> {
    require_3_mod_4(n)?;
    require_exact_size(n)?;
    let chi = QuadraticCharacter::jacobi(n)?;
    let m = 4 * n as usize;
    let mut acc = CycElement::one(m);
    for c in chi.classes(1) {
        acc = acc.mul_binomial(n as i64, 4 * c as i64);
    }
    Ok(acc)
}

/// `√n ∈ Z[ζ_4n]` as `−i · Σ (t/n) ζ_n^t`.
///
/// The embedding is checked to be `+√n`, not `−√n`, before returning.
pub fn sqrt_embed(n: u64) -> Result<CycElement> {
    require_3_mod_4(n)?;
    require_exact_size(n)?;
    let chi = QuadraticCharacter::jacobi(n)?;
    let m = 4 * n as usize;
    let mut sum = CycElement::zero(m);
    for t in 1..n {
        sum.coeffs[4 * t as usize] = Integer::from(chi.at(t as i64));
    }
    let x = -&sum.shift(n as i64);
    let prec = 128;
    let value = x.to_numeric(prec);
    let root = Float::with_val(prec, n).sqrt();
    let err =
        Float::with_val(prec, value.re() - &root).abs() + Float::with_val(prec, value.im()).abs();
    if err > 1e-20 {
        return Err(Error::SignCheck(format!(
            "−i·Σ (t/{n}) ζ^t embeds as {value}, expected +√{n}"
        )));
    }
    Ok(x)
}

/// `a + b√n ∈ Z[ζ_4n]` for `x = a + b√n` with `n ≡ 3 (mod 4)`.
pub fn quad_embed(x: &QuadNumber) -> Result<CycElement> {
    let n = x.radicand();
    if x.denominator() != 1 {
        return invalid(format!("{x} is not in Z[√{n}]"));
    }
    let root = sqrt_embed(n)?;
    let m = 4 * n as usize;
    Ok(&CycElement::from_integer(m, x.a().clone()) + &root.scale(x.b()))
}
