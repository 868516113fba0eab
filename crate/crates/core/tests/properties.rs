//! Cross-module properties against oracles that share no code with the crate.

use proptest::prelude::*;
use rug::float::Constant;
use rug::{Float, Integer};

use qcyclo::classnum::{h_imag, h_real};
use qcyclo::cyclotomic::gauss_decomposition;
use qcyclo::ntheory::{is_squarefree, jacobi, kronecker};
use qcyclo::quadratic::fundamental_unit;
use qcyclo::theorem::{verify, CaseKind, VerifyOptions};
use qcyclo::QuadNumber;

const PREC: u32 = 512;

fn is_fundamental(d: u64) -> bool {
    match d % 4 {
        1 => is_squarefree(d),
        0 => matches!((d / 4) % 4, 2 | 3) && is_squarefree(d / 4),
        _ => false,
    }
}

/// Number of reduced forms `ax² + bxy + cy²` of discriminant `−delta`.
fn h_forms(delta: i64) -> u64 {
    let mut count = 0;
    let mut a = 1i64;
    while 3 * a * a <= delta {
        for b in -a + 1..=a {
            if (b * b + delta) % (4 * a) == 0 {
                let c = (b * b + delta) / (4 * a);
                if c > a || (c == a && b >= 0) {
                    count += 1;
                }
            }
        }
        a += 1;
    }
    count
}

/// Least `t > 0` with `D t² ± 4` a square, as `(s, t)` for `ε = (s + t√D)/2`.
fn unit_by_search(d: u64, limit: u64) -> Option<(u128, u128)> {
    let d = d as u128;
    (1..=limit as u128).find_map(|t| {
        [d * t * t - 4, d * t * t + 4].into_iter().find_map(|x| {
            let s = (x as f64).sqrt() as u128;
            (s.saturating_sub(1)..=s + 1)
                .find(|r| r * r == x)
                .map(|r| (r, t))
        })
    })
}

fn as_float(q: &QuadNumber) -> Float {
    let root = Float::with_val(PREC, q.radicand()).sqrt();
    (Float::with_val(PREC, q.a()) + Float::with_val(PREC, q.b()) * root) / q.denominator()
}

/// `S_n(i)` as `(re, im)`, multiplied out directly from sines and cosines.
fn sn_at_i(n: u64) -> (Float, Float) {
    let mut re = Float::with_val(PREC, 1);
    let mut im = Float::with_val(PREC, 0);
    let tau = Float::with_val(PREC, Constant::Pi) * 2u32;
    for c in 1..n {
        if jacobi(c as i64, n).unwrap() != 1 {
            continue;
        }
        let angle = Float::with_val(PREC, &tau * c) / n;
        let (s, co) = angle.sin_cos(Float::new(PREC));
        // (re + i·im)(−cos + i(1 − sin))
        let (x, y) = (-co, 1 - s);
        let next_re = Float::with_val(PREC, &re * &x) - Float::with_val(PREC, &im * &y);
        im = Float::with_val(PREC, &re * &y) + Float::with_val(PREC, &im * &x);
        re = next_re;
    }
    (re, im)
}

fn eligible() -> impl Strategy<Value = u64> {
    (1u64..300)
        .prop_map(|k| 4 * k + 3)
        .prop_filter("squarefree", |&n| is_squarefree(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_form_matches_direct_product(n in eligible()) {
        let report = verify(n, &VerifyOptions::default()).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failed_checks());
        let (a, b) = report.pair().unwrap();
        let value = as_float(&QuadNumber::new(a.clone(), b.clone(), n, 1).unwrap());
        let (re, im) = sn_at_i(n);
        let tol = Float::with_val(PREC, Float::i_exp(1, -200));
        match report.case {
            CaseKind::Composite => {
                prop_assert!(Float::with_val(PREC, &re - &value).abs() < tol);
                prop_assert!(im.abs() < tol);
            }
            CaseKind::Prime => {
                // (i − s)(re + i·im) with s = (2/p) is real
                let s = jacobi(2, n).unwrap();
                let real = Float::with_val(PREC, -&im) - Float::with_val(PREC, &re * s);
                let imag = Float::with_val(PREC, &re) - Float::with_val(PREC, &im * s);
                prop_assert!(Float::with_val(PREC, &real - &value).abs() < tol);
                prop_assert!(imag.abs() < tol);
            }
        }
        let norm = Integer::from(a.square_ref()) - Integer::from(b.square_ref()) * n;
        match report.case {
            CaseKind::Prime => prop_assert_eq!(norm, 2 * jacobi(2, n).unwrap()),
            CaseKind::Composite => prop_assert!(norm == 1 || norm == -1),
        }
    }

    #[test]
    fn unit_is_least_solution(d in 5u64..400) {
        prop_assume!(is_fundamental(d));
        let Some((s, t)) = unit_by_search(d, 2_000_000) else {
            return Err(TestCaseError::reject("unit too large to search"));
        };
        let unit = fundamental_unit(d).unwrap();
        // ε = (s + t√D)/2 rewritten over the radicand
        let scale = if d % 4 == 0 { 2u32 } else { 1 };
        let twice_a = Integer::from(unit.a()) * 2u32 / unit.denominator();
        let twice_b = Integer::from(unit.b()) * 2u32 / unit.denominator();
        prop_assert_eq!(twice_a, Integer::from(s));
        prop_assert_eq!(twice_b, Integer::from(t) * scale);
        let norm = unit.norm();
        prop_assert!(norm == 1 || norm == -1);
    }

    #[test]
    fn real_class_number_matches_l_series(d in 5u64..300) {
        prop_assume!(is_fundamental(d));
        let unit = fundamental_unit(d).unwrap();
        let h = h_real(d, &unit).unwrap();
        // L(1, χ_D) from whole periods of Σ χ(k)/k; the tail is O(D/N)
        let chi: Vec<f64> = (0..d).map(|k| f64::from(kronecker(d as i64, k as i64))).collect();
        let terms = d * (2_000_000 / d);
        let l: f64 = (1..=terms).map(|k| chi[(k % d) as usize] / k as f64).sum();
        let log_unit = as_float(&unit).ln().to_f64();
        let estimate = (d as f64).sqrt() * l / (2.0 * log_unit);
        prop_assert!((estimate - h as f64).abs() < 0.01, "h = {} vs {}", h, estimate);
    }

    #[test]
    fn imaginary_class_number_counts_forms(k in 1u64..5000) {
        let n = 4 * k + 3;
        prop_assume!(is_squarefree(n));
        prop_assert_eq!(h_imag(n).unwrap(), h_forms(n as i64));
    }

    #[test]
    fn gauss_identity_at_integers(i in 0usize..40, x in -30i64..30) {
        let primes: Vec<u64> = (3u64..200).filter(|&p| (2..p).all(|q| p % q != 0)).collect();
        let p = primes[i % primes.len()];
        let g = gauss_decomposition(p).unwrap();
        let eval = |coeffs: &[Integer]| {
            coeffs.iter().rev().fold(Integer::new(), |acc, c| acc * x + c)
        };
        let phi = (0..p).fold(Integer::new(), |acc, _| acc * x + 1);
        let y = eval(&g.y);
        let z = eval(&g.z);
        let rhs = Integer::from(y.square_ref()) - Integer::from(z.square_ref()) * g.p_star();
        prop_assert_eq!(phi * 4u32, rhs);
    }
}
