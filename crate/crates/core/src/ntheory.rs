//! Elementary number theory: quadratic symbols, primality, factorization,
//! integer square roots and small modular helpers.
//!
//! Everything here works on machine integers except [`isqrt`] and
//! [`is_probable_prime`], which take arbitrary-precision values.

use rug::Integer;

use crate::error::{invalid, Result};

/// Jacobi symbol `(a/n)` for odd `n >= 1`.
///
/// `(a/1) = 1` for every `a`.
pub fn jacobi(a: i64, n: u64) -> Result<i32> {
    if n == 0 || n.is_multiple_of(2) {
        return invalid(format!("jacobi modulus must be odd and positive, got {n}"));
    }
    Ok(jacobi_odd((a as i128).rem_euclid(n as i128) as u64, n))
}

/// Binary Jacobi algorithm; `n` must be odd and `a < n` is not required.
pub(crate) fn jacobi_odd(a: u64, n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut sign = 1;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol `(a/n)`, defined for every pair of integers.
pub fn kronecker(a: i64, n: i64) -> i32 {
    let a = a as i128;
    let mut n = n as i128;
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= twos;
        // (a/2) = +1 for a = ±1 mod 8, -1 for a = ±3 mod 8
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    let n = n as u64;
    result * jacobi_odd(a.rem_euclid(n as i128) as u64, n)
}

/// The table `c -> (c/n)` for `0 <= c < n`, `n` odd.
///
/// Every finite sum over residues in this crate walks one of these.
#[derive(Debug, Clone)]
pub struct QuadraticCharacter {
    modulus: u64,
    values: Vec<i8>,
}

impl QuadraticCharacter {
    pub fn jacobi(n: u64) -> Result<Self> {
        if n == 0 || n.is_multiple_of(2) {
            return invalid(format!("character modulus must be odd, got {n}"));
        }
        let values = (0..n).map(|c| jacobi_odd(c, n) as i8).collect();
        Ok(Self { modulus: n, values })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `(c/n)` for any integer `c`.
    #[inline]
    pub fn at(&self, c: i64) -> i32 {
        self.values[c.rem_euclid(self.modulus as i64) as usize] as i32
    }

    /// Residues `0 < c < n` with `(c/n) = value`.
    pub fn classes(&self, value: i32) -> impl Iterator<Item = u64> + '_ {
        (1..self.modulus).filter(move |&c| self.values[c as usize] as i32 == value)
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse by extended Euclid; `None` when `gcd(a, m) != 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Bases making Miller-Rabin deterministic for every n < 3.3e24.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary-size integers.
///
/// Exact below 2^64. Above, runs 64 Miller-Rabin rounds, so a composite is
/// accepted with probability below 4^-64 = 2^-128.
pub fn is_probable_prime(n: &Integer) -> bool {
    match n.to_u64() {
        Some(small) => is_prime(small),
        None => *n > 0 && n.is_probably_prime(64) != rug::integer::IsPrime::No,
    }
}

/// A positive integer together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn euler_phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Full factorization: trial division up to 10^6, then Pollard rho.
pub fn factorize(n: u64) -> FactoredInteger {
    assert!(n >= 1, "factorize(0)");
    let mut primes = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && d * d <= rest {
        while rest.is_multiple_of(d) {
            primes.push(d);
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        split_large(rest, &mut primes);
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    FactoredInteger { value: n, factors }
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_large(d, out);
    split_large(n / d, out);
}

// Floyd cycle finding; n is an odd composite without small factors.
fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        while g == 1 {
            x = f(x);
            y = f(f(y));
            g = gcd(x.abs_diff(y), n);
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).is_squarefree()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).euler_phi()
}

/// `(floor(sqrt(n)), floor(sqrt(n))^2 == n)`.
pub fn isqrt(n: &Integer) -> (Integer, bool) {
    assert!(*n >= 0, "isqrt of a negative number");
    let (root, rem) = n.clone().sqrt_rem(Integer::new());
    let exact = rem == 0;
    (root, exact)
}

pub fn isqrt_u64(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `k! mod p` by a running product.
pub fn factorial_mod(k: u64, p: u64) -> u64 {
    (1..=k).fold(1 % p, |acc, j| mul_mod(acc, j, p))
}

/// `(-1)^e` for a possibly negative exponent.
#[inline]
pub fn neg_one_pow(e: i64) -> i32 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
