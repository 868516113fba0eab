//! Dense integer polynomials, coefficients in ascending degree.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Integer;

use crate::ntheory::factorize;

fn divisors(m: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in factorize(m).factors() {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

// Φ_m has small coefficients at every modulus this crate touches; i64 with
// checked arithmetic keeps the recursion cheap and loud on overflow.
fn cyclotomic_small(m: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache poisoned").get(&m) {
        return hit.clone();
    }
    // x^m − 1 divided by Φ_d for every proper divisor d of m
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_small(d);
        num = divide_monic_small(&num, &phi_d);
    }
    let out = Arc::new(num);
    cache.lock().expect("cache poisoned").insert(m, out.clone());
    out
}

fn divide_monic_small(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (dn..num.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        quot[k - dn] = c;
        for (j, &dj) in den.iter().enumerate() {
            if dj != 0 {
                let idx = k - dn + j;
                rem[idx] = rem[idx]
                    .checked_sub(c.checked_mul(dj).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Coefficients of `Φ_m`, ascending. Panics for `m == 0`.
pub fn cyclotomic_poly(m: u64) -> Vec<Integer> {
    assert!(m >= 1, "cyclotomic_poly(0)");
    cyclotomic_small(m)
        .iter()
        .map(|&c| Integer::from(c))
        .collect()
}

pub(crate) fn cyclotomic_poly_i64(m: u64) -> Arc<Vec<i64>> {
    cyclotomic_small(m)
}

pub fn poly_mul(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Integer::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += Integer::from(x * y);
        }
    }
    out
}

pub fn poly_sub(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    let mut out = vec![Integer::new(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

pub fn poly_scale(a: &[Integer], k: &Integer) -> Vec<Integer> {
    a.iter().map(|x| Integer::from(x * k)).collect()
}

pub(crate) fn trim(p: &mut Vec<Integer>) {
    while p.last().is_some_and(|c| *c == 0) {
        p.pop();
    }
}

/// `p(i)` as a Gaussian integer `(re, im)`.
pub fn eval_at_i(p: &[Integer]) -> (Integer, Integer) {
    let (mut re, mut im) = (Integer::new(), Integer::new());
    for (k, c) in p.iter().enumerate() {
        match k % 4 {
            0 => re += c,
            1 => im += c,
            2 => re -= c,
            _ => im -= c,
        }
    }
    (re, im)
}

/// `p(1)`.
pub fn eval_at_one(p: &[Integer]) -> Integer {
    p.iter().sum()
}
