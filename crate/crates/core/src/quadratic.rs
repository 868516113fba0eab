//! Real quadratic fields: exact elements `(a + b√n)/d`, continued fractions
//! of `√n`, Pell solutions and fundamental units.

use std::fmt;

use rug::{Float, Integer};

use crate::error::{invalid, Error, Result};
use crate::ntheory::{factorize, isqrt_u64};

/// An element `(a + b√n)/d` of a real quadratic field, `d ∈ {1, 2}`.
///
/// Values are canonical: a denominator of 2 only survives when `a` and `b`
/// are both odd, which requires `n ≡ 1 (mod 4)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadNumber {
    a: Integer,
    b: Integer,
    n: u64,
    d: u32,
}

impl QuadNumber {
    pub fn new(a: impl Into<Integer>, b: impl Into<Integer>, n: u64, d: u32) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if n < 2 || !factorize(n).is_squarefree() {
            return invalid(format!(
                "radicand must be squarefree and at least 2, got {n}"
            ));
        }
        match d {
            1 => {}
            2 => {
                if n % 4 != 1 {
                    return invalid(format!("half-integers need n ≡ 1 (mod 4), got n = {n}"));
                }
                if a.is_odd() != b.is_odd() {
                    return invalid("half-integer coordinates must have equal parity");
                }
            }
            _ => return invalid(format!("denominator must be 1 or 2, got {d}")),
        }
        Ok(Self::raw(a, b, n, d))
    }

    // Caller guarantees the invariants; only the d = 2 reduction is applied.
    pub(crate) fn raw(a: Integer, b: Integer, n: u64, d: u32) -> Self {
        let mut out = Self { a, b, n, d };
        if out.d == 2 && out.a.is_even() && out.b.is_even() {
            out.a >>= 1;
            out.b >>= 1;
            out.d = 1;
        }
        out
    }

    pub fn one(n: u64) -> Self {
        Self::raw(Integer::from(1), Integer::new(), n, 1)
    }

    pub fn a(&self) -> &Integer {
        &self.a
    }

    pub fn b(&self) -> &Integer {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.n
    }

    pub fn denominator(&self) -> u32 {
        self.d
    }

    /// Coordinates `(u, v)` with `self = (u + v√n)/2`.
    pub fn halves(&self) -> (Integer, Integer) {
        if self.d == 2 {
            (self.a.clone(), self.b.clone())
        } else {
            (Integer::from(&self.a << 1), Integer::from(&self.b << 1))
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RadicandMismatch(self.n, other.n));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut a = Integer::from(&self.a * &other.a);
        a += Integer::from(&self.b * &other.b) * self.n;
        let mut b = Integer::from(&self.a * &other.b);
        b += Integer::from(&self.b * &other.a);
        let mut d = self.d * other.d;
        if d == 4 {
            // closed under multiplication: both numerators are even here
            debug_assert!(a.is_even() && b.is_even());
            a >>= 1;
            b >>= 1;
            d = 2;
        }
        Self::raw(a, b, self.n, d)
    }

    pub fn conj(&self) -> Self {
        Self::raw(self.a.clone(), Integer::from(-&self.b), self.n, self.d)
    }

    /// `(a² − n b²)/d²`. Always an integer for canonical values.
    pub fn norm(&self) -> Integer {
        let mut num = Integer::from(self.a.square_ref());
        num -= Integer::from(self.b.square_ref()) * self.n;
        let den = self.d * self.d;
        debug_assert!(num.is_divisible_u(den));
        num.div_exact_u(den)
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::one(self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn neg(&self) -> Self {
        Self::raw(
            Integer::from(-&self.a),
            Integer::from(-&self.b),
            self.n,
            self.d,
        )
    }

    /// Numeric value to `prec` bits, also when `a` and `b√n` nearly cancel.
    ///
    /// `|a ± b√n| >= |norm| / |conjugate|`, so at most twice the coordinate
    /// length is lost to cancellation.
    pub fn to_float(&self, prec: u32) -> Float {
        let extra = 2 * self.a.significant_bits().max(self.b.significant_bits()) + 32;
        let work = prec + extra;
        let mut root = Float::with_val(work, self.n);
        root.sqrt_mut();
        let mut v = Float::with_val(work, &self.b * root);
        v += &self.a;
        v /= self.d;
        Float::with_val(prec, v)
    }
}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b < 0 { '−' } else { '+' };
        let b = self.b.clone().abs();
        let body = if b == 1 {
            format!("{}{}√{}", self.a, sign, self.n)
        } else {
            format!("{}{}{}√{}", self.a, sign, b, self.n)
        };
        if self.d == 1 {
            f.write_str(&body)
        } else {
            write!(f, "({body})/{}", self.d)
        }
    }
}

/// Periodic continued fraction `√n = [a0; period, period, ...]`.
///
/// `p[k]`, `q[k]` are the surd-recurrence values with
/// `(√n + p[k]) / q[k]` the k-th complete quotient, for `k` over one
/// period (`p[0] = 0`, `q[0] = 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfExpansion {
    pub n: u64,
    pub a0: u64,
    pub period: Vec<u64>,
    pub p: Vec<u64>,
    pub q: Vec<u64>,
}

pub fn cf_sqrt(n: u64) -> Result<CfExpansion> {
    let a0 = isqrt_u64(n);
    if a0 * a0 == n {
        return Err(Error::PerfectSquare(n));
    }
    let (mut p, mut q, mut a) = (0u64, 1u64, a0);
    let mut ps = vec![p];
    let mut qs = vec![q];
    let mut period = Vec::new();
    loop {
        p = a * q - p;
        // exact: q divides n - p² at every step
        q = (n - p * p) / q;
        a = (a0 + p) / q;
        ps.push(p);
        qs.push(q);
        period.push(a);
        if q == 1 {
            break;
        }
    }
    // keep one full period of (p, q): indices 0..len
    ps.pop();
    qs.pop();
    Ok(CfExpansion {
        n,
        a0,
        period,
        p: ps,
        q: qs,
    })
}

impl CfExpansion {
    /// Partial quotient `a_k` for any `k >= 0`.
    pub fn term(&self, k: usize) -> u64 {
        if k == 0 {
            self.a0
        } else {
            self.period[(k - 1) % self.period.len()]
        }
    }

    /// Convergents `h_k / k_k` for `k = 0..count`.
    pub fn convergents(&self, count: usize) -> Vec<(Integer, Integer)> {
        let mut out = Vec::with_capacity(count);
        let (mut h0, mut h1) = (Integer::from(1), Integer::from(self.a0));
        let (mut k0, mut k1) = (Integer::new(), Integer::from(1));
        for idx in 0..count {
            if idx > 0 {
                let a = self.term(idx);
                let h2 = Integer::from(&h1 * a) + &h0;
                let k2 = Integer::from(&k1 * a) + &k0;
                h0 = std::mem::replace(&mut h1, h2);
                k0 = std::mem::replace(&mut k1, k2);
            }
            out.push((h1.clone(), k1.clone()));
        }
        out
    }
}

fn require_squarefree_radicand(n: u64) -> Result<()> {
    if n < 2 || !factorize(n).is_squarefree() {
        return invalid(format!(
            "radicand must be squarefree and at least 2, got {n}"
        ));
    }
    Ok(())
}

/// Smallest `x + y√n > 1` with `x² − n y² = ±1`: the fundamental unit of
/// `Z[√n]`.
pub fn pell_fundamental(n: u64) -> Result<QuadNumber> {
    require_squarefree_radicand(n)?;
    let cf = cf_sqrt(n)?;
    let len = cf.period.len();
    let (x, y) = cf.convergents(len).pop().expect("nonempty period");
    Ok(QuadNumber::raw(x, y, n, 1))
}

/// Which ring of integers a fundamental discriminant belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Discriminant {
    /// `D = 4m` with `m ≡ 2, 3 (mod 4)` squarefree; the radicand is `m`.
    Even { m: u64 },
    /// `D ≡ 1 (mod 4)` squarefree; the radicand is `D`.
    Odd { d: u64 },
}

impl Discriminant {
    pub fn parse(disc: u64) -> Result<Self> {
        let squarefree = |k: u64| k >= 2 && factorize(k).is_squarefree();
        match disc % 4 {
            1 if squarefree(disc) => Ok(Self::Odd { d: disc }),
            0 if matches!((disc / 4) % 4, 2 | 3) && squarefree(disc / 4) => {
                Ok(Self::Even { m: disc / 4 })
            }
            _ => Err(Error::NotFundamental(disc)),
        }
    }

    pub fn value(&self) -> u64 {
        match *self {
            Self::Even { m } => 4 * m,
            Self::Odd { d } => d,
        }
    }

    pub fn radicand(&self) -> u64 {
        match *self {
            Self::Even { m } => m,
            Self::Odd { d } => d,
        }
    }
}

/// Fundamental unit `ε_D > 1` of the real quadratic field of discriminant `D`.
///
/// For `D ≡ 1 (mod 4)` the result may be a half-integer `(u + v√D)/2` with
/// `u² − D v² = ±4`.
pub fn fundamental_unit(disc: u64) -> Result<QuadNumber> {
    match Discriminant::parse(disc)? {
        Discriminant::Even { m } => pell_fundamental(m),
        Discriminant::Odd { d } => half_unit(d),
    }
}

fn half_unit(d: u64) -> Result<QuadNumber> {
    let cf = cf_sqrt(d)?;
    let len = cf.period.len();
    let convergents = cf.convergents(len);
    // Odd-odd solutions only exist for d ≡ 5 (mod 8). Below 21 they need not
    // be convergents of √d, so small d is searched directly.
    if d % 8 == 5 {
        if d < 21 {
            let (_, y_max) = convergents.last().expect("nonempty period");
            let y_max = y_max.to_u64().unwrap_or(u64::MAX);
            for v in (1..=y_max).step_by(2) {
                for delta in [-4i64, 4] {
                    let u2 = (d * v * v) as i64 + delta;
                    if u2 <= 0 {
                        continue;
                    }
                    let u = isqrt_u64(u2 as u64);
                    if u * u == u2 as u64 && u % 2 == 1 {
                        return Ok(QuadNumber::raw(u.into(), v.into(), d, 2));
                    }
                }
            }
        } else {
            for (x, y) in &convergents {
                if x.is_odd() && y.is_odd() {
                    let mut norm = Integer::from(x.square_ref());
                    norm -= Integer::from(y.square_ref()) * d;
                    if norm == 4 || norm == -4 {
                        return Ok(QuadNumber::raw(x.clone(), y.clone(), d, 2));
                    }
                }
            }
        }
    }
    let (x, y) = convergents.into_iter().last().expect("nonempty period");
    Ok(QuadNumber::raw(x, y, d, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntheory::is_squarefree;
    use proptest::prelude::*;

    fn q(a: i64, b: i64, n: u64, d: u32) -> QuadNumber {
        QuadNumber::new(a, b, n, d).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let e = q(4, 1, 15, 1);
        assert_eq!(e.try_mul(&e.conj()).unwrap(), QuadNumber::one(15));
        let e28 = q(8, 3, 7, 1);
        assert_eq!(e28.conj(), q(8, -3, 7, 1));
        assert_eq!(e28.norm(), 1);
        let golden = q(1, 1, 5, 2);
        assert_eq!(golden.try_mul(&golden).unwrap(), q(3, 1, 5, 2));
        assert_eq!(golden.norm(), -1);
    }

    #[test]
    fn mismatched_radicands() {
        assert_eq!(
            q(1, 1, 5, 1).try_mul(&q(1, 1, 7, 1)),
            Err(Error::RadicandMismatch(5, 7))
        );
    }

    #[test]
    fn constructor_validation() {
        assert!(QuadNumber::new(1, 1, 12, 1).is_err());
        assert!(QuadNumber::new(1, 1, 7, 2).is_err());
        assert!(QuadNumber::new(1, 2, 5, 2).is_err());
        assert!(QuadNumber::new(1, 2, 5, 3).is_err());
        assert_eq!(q(2, 4, 5, 2), q(1, 2, 5, 1));
    }

    #[test]
    fn powers() {
        assert_eq!(q(4, 1, 15, 1).pow(2), q(31, 8, 15, 1));
        assert_eq!(q(8, 3, 7, 1).pow(0), QuadNumber::one(7));
        assert_eq!(q(10, 3, 11, 1).pow(1), q(10, 3, 11, 1));
        // ((1+√5)/2)^3 = 2 + √5
        assert_eq!(q(1, 1, 5, 2).pow(3), q(2, 1, 5, 1));
    }

    #[test]
    fn float_value_survives_cancellation() {
        let small = q(4, -1, 15, 1).pow(40);
        let big = q(4, 1, 15, 1).pow(40);
        let prod = Float::with_val(128, small.to_float(128) * big.to_float(128));
        assert!((prod.clone() - 1.0f64).abs() < 1e-30, "{prod}");
    }

    #[test]
    fn continued_fractions() {
        let c7 = cf_sqrt(7).unwrap();
        assert_eq!((c7.a0, c7.period.clone()), (2, vec![1, 1, 1, 4]));
        let c2 = cf_sqrt(2).unwrap();
        assert_eq!((c2.a0, c2.period.clone()), (1, vec![2]));
        let c15 = cf_sqrt(15).unwrap();
        assert_eq!((c15.a0, c15.period.clone()), (3, vec![1, 6]));
        assert_eq!(cf_sqrt(49), Err(Error::PerfectSquare(49)));
        assert_eq!(c7.p.len(), c7.period.len());
    }

    #[test]
    fn pell_examples() {
        assert_eq!(pell_fundamental(15).unwrap(), q(4, 1, 15, 1));
        assert_eq!(pell_fundamental(7).unwrap(), q(8, 3, 7, 1));
        assert_eq!(
            pell_fundamental(419).unwrap(),
            q(270_174_970, 13_198_911, 419, 1)
        );
        assert_eq!(pell_fundamental(2).unwrap(), q(1, 1, 2, 1));
        assert!(pell_fundamental(12).is_err());
    }

    #[test]
    fn fundamental_unit_examples() {
        assert_eq!(fundamental_unit(60).unwrap(), q(4, 1, 15, 1));
        assert_eq!(fundamental_unit(5).unwrap(), q(1, 1, 5, 2));
        assert_eq!(fundamental_unit(44).unwrap(), q(10, 3, 11, 1));
        assert_eq!(fundamental_unit(13).unwrap(), q(3, 1, 13, 2));
        assert_eq!(fundamental_unit(17).unwrap(), q(4, 1, 17, 1));
        assert_eq!(fundamental_unit(21).unwrap(), q(5, 1, 21, 2));
        assert_eq!(fundamental_unit(29).unwrap(), q(5, 1, 29, 2));
        assert_eq!(fundamental_unit(8).unwrap(), q(1, 1, 2, 1));
        for bad in [4, 9, 16, 25, 36, 45, 7, 20] {
            assert_eq!(fundamental_unit(bad), Err(Error::NotFundamental(bad)));
        }
    }

    // Brute-force smallest (u, v), v >= 1, with u² − D v² = ±4 (D ≡ 1 mod 4),
    // giving ε = (u + v√D)/2.
    fn half_unit_oracle(d: u64) -> (u64, u64) {
        for v in 1u64.. {
            for delta in [-4i128, 4] {
                let u2 = d as i128 * (v * v) as i128 + delta;
                if u2 > 0 {
                    let u = isqrt_u64(u2 as u64);
                    if (u * u) as i128 == u2 {
                        return (u, v);
                    }
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn odd_discriminants_against_brute_force() {
        for d in (5..400u64).step_by(4) {
            if !is_squarefree(d) {
                continue;
            }
            let unit = fundamental_unit(d).unwrap();
            let (u, v) = unit.halves();
            let (bu, bv) = half_unit_oracle(d);
            // with no odd pair the oracle lands on twice the Z[√D] unit
            assert_eq!(
                (u.to_u64().unwrap(), v.to_u64().unwrap()),
                (bu, bv),
                "D = {d}"
            );
        }
    }

    // Smallest y >= 1 with n y² ± 1 a perfect square, in u128 arithmetic.
    fn pell_oracle(n: u64, y_cap: u64) -> Option<(u128, u128)> {
        for y in 1..y_cap as u128 {
            for delta in [-1i128, 1] {
                let x2 = (n as u128 * y * y) as i128 + delta;
                let x = (x2 as f64).sqrt() as u128;
                for cand in x.saturating_sub(1)..=x + 1 {
                    if (cand * cand) as i128 == x2 {
                        return Some((cand, y));
                    }
                }
            }
        }
        None
    }

    #[test]
    fn no_smaller_pell_unit_for_small_radicands() {
        for n in 2..=100u64 {
            if !is_squarefree(n) {
                continue;
            }
            let e = pell_fundamental(n).unwrap();
            let y = e.b().to_u64().unwrap();
            assert!(pell_oracle(n, y).is_none(), "smaller unit for n = {n}");
            let x = e.a().to_u64().unwrap();
            assert_eq!(pell_oracle(n, y + 1), Some((x as u128, y as u128)));
            if n % 4 == 3 {
                assert_eq!(e.norm(), 1);
            }
        }
    }

    #[test]
    fn cf_period_shape() {
        for n in 2..3000u64 {
            let r = isqrt_u64(n);
            if r * r == n {
                continue;
            }
            let cf = cf_sqrt(n).unwrap();
            let len = cf.period.len();
            assert_eq!(cf.period[len - 1], 2 * cf.a0);
            let body = &cf.period[..len - 1];
            assert!(body.iter().eq(body.iter().rev()), "n = {n}");
            for (&p, &qk) in cf.p.iter().zip(&cf.q) {
                assert_eq!((n - p * p) % qk, 0);
            }
        }
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(
            a1 in -10_000i64..10_000, b1 in -10_000i64..10_000,
            a2 in -10_000i64..10_000, b2 in -10_000i64..10_000,
            idx in 0usize..6,
        ) {
            let n = [2u64, 3, 5, 7, 13, 419][idx];
            let x = q(a1, b1, n, 1);
            let y = q(a2, b2, n, 1);
            prop_assert_eq!(x.try_mul(&y).unwrap().norm(), x.norm() * y.norm());
        }

        #[test]
        fn half_integer_norms(a in -500i64..500, b in -500i64..500, idx in 0usize..4) {
            let n = [5u64, 13, 21, 29][idx];
            let (a, b) = (2 * a + 1, 2 * b + 1);
            let x = q(a, b, n, 2);
            let y = x.conj();
            prop_assert_eq!(x.try_mul(&y).unwrap().norm(), x.norm() * y.norm());
        }

        #[test]
        fn unit_powers_stay_units(disc_idx in 0usize..8, k in 0u64..40) {
            let disc = [5u64, 8, 12, 13, 28, 44, 60, 1676][disc_idx];
            let e = fundamental_unit(disc).unwrap();
            let norm = e.pow(k).norm();
            prop_assert!(norm == 1 || norm == -1);
        }
    }
}
