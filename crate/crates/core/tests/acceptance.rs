//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use rug::Integer;

use qcyclo::classnum::{h_imag, h_imag_8p, h_real, INTEGRALITY_WINDOW_LOG2};
use qcyclo::cyclotomic::{gauss_decomposition, sn_eval_exact, sn_eval_numeric, EvalPoint};
use qcyclo::ntheory::{euler_phi, is_prime, is_squarefree, jacobi};
use qcyclo::quadratic::fundamental_unit;
use qcyclo::scan::{run_scan, ScanConfig, ScanKind};
use qcyclo::theorem::{
    aac_check, alpha, beta, chowla_congruence, corollary_u_congruence,
    corollary_u_congruence_unit_only, delta4n, first_non_residue, lambda4n, mordell_congruence,
    sun_sign_check, verify, verify_chapman, verify_lemma_product, verify_lemma_sn1,
    verify_phi_at_i, ExactMode, VerificationReport, VerifyOptions, NUMERIC_TOLERANCE_LOG2,
};
use qcyclo::QuadNumber;

/// Numeric residual ceiling for closed-form comparisons.
const RESIDUAL_LOG2: f64 = -64.0;
/// Precision of the lemma suite; its tolerance is `2^−(LEMMA_PRECISION/2)`.
const LEMMA_PRECISION: u32 = 256;
const WORKED_EXAMPLE_BUDGET: Duration = Duration::from_secs(1);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eligible(limit: u64) -> Vec<u64> {
    (7..limit)
        .step_by(4)
        .filter(|&n| is_squarefree(n))
        .collect()
}

fn primes_3_mod_4(limit: u64) -> Vec<u64> {
    (7..limit).step_by(4).filter(|&p| is_prime(p)).collect()
}

fn quad(a: i64, b: i64, n: u64) -> QuadNumber {
    QuadNumber::new(a, b, n, 1).unwrap()
}

fn pair(r: &VerificationReport) -> Option<(Integer, Integer)> {
    r.pair().map(|(a, b)| (a.clone(), b.clone()))
}

fn passed_with_residual(r: &VerificationReport) -> Result<(), String> {
    ensure(r.passed(), || {
        format!("n = {}: failed {:?}", r.n, r.failed_checks())
    })?;
    let res = r
        .residual_log2
        .ok_or_else(|| format!("n = {}: no residual", r.n))?;
    ensure(res < RESIDUAL_LOG2, || {
        format!("n = {}: residual 2^{res:.1}", r.n)
    })
}

fn worked_example_15() -> Outcome {
    let start = Instant::now();
    let unit = fundamental_unit(60).map_err(|e| e.to_string())?;
    ensure(unit == quad(4, 1, 15), || format!("ε_60 = {unit}"))?;
    let h = h_real(60, &unit).map_err(|e| e.to_string())?;
    ensure(h == 2, || format!("h(60) = {h}"))?;
    ensure(alpha(15) == Ok(1), || "α(15) ≠ 1".into())?;
    ensure(euler_phi(15) == 8, || "φ(15) ≠ 8".into())?;
    let r = verify(15, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    passed_with_residual(&r)?;
    ensure(r.checks.get("exact_match") == Some(&true), || {
        "no exact match".into()
    })?;
    ensure(pair(&r) == Some((4.into(), (-1).into())), || {
        "S_15(i) ≠ 4 − √15".into()
    })?;
    let t = start.elapsed();
    ensure(t < WORKED_EXAMPLE_BUDGET, || format!("took {t:?}"))?;
    Ok(format!(
        "S_15(i) = 4 − √15, residual 2^{:.0}, {t:.2?}",
        r.residual_log2.unwrap()
    ))
}

fn worked_example_prime(p: u64, unit: (i64, i64), h: u64, b: u64, ab: (i64, i64)) -> Outcome {
    let start = Instant::now();
    let e = fundamental_unit(4 * p).map_err(|e| e.to_string())?;
    ensure(e == quad(unit.0, unit.1, p), || {
        format!("ε_{} = {e}", 4 * p)
    })?;
    let hr = h_real(4 * p, &e).map_err(|e| e.to_string())?;
    ensure(hr == h, || format!("h({}) = {hr}", 4 * p))?;
    ensure(beta(p) == Ok(b), || format!("β({p}) ≠ {b}"))?;
    let opts = VerifyOptions {
        exact: ExactMode::Always,
        ..VerifyOptions::default()
    };
    let r = verify(p, &opts).map_err(|e| e.to_string())?;
    passed_with_residual(&r)?;
    let (a, bb) = pair(&r).ok_or("no pair")?;
    ensure(
        (a.clone(), bb.clone()) == (ab.0.into(), ab.1.into()),
        || format!("pair ({a}, {bb})"),
    )?;
    let s = jacobi(2, p).unwrap();
    let norm = Integer::from(a.square_ref()) - Integer::from(bb.square_ref()) * p;
    ensure(norm == 2 * s, || format!("a² − {p}b² = {norm}"))?;
    let t = start.elapsed();
    ensure(t < WORKED_EXAMPLE_BUDGET, || format!("took {t:?}"))?;
    let gamma = if s == 1 { "i − 1" } else { "i + 1" };
    Ok(format!(
        "({gamma})S_{p}(i) = {}, a² − {p}b² = {norm}, {t:.2?}",
        quad(ab.0, ab.1, p)
    ))
}

fn corollary_sweep() -> Outcome {
    let e = fundamental_unit(4 * 419).map_err(|e| e.to_string())?;
    ensure(
        e == QuadNumber::new(270174970, 13198911, 419, 1).unwrap(),
        || format!("ε_1676 = {e}"),
    )?;
    ensure(Integer::from(e.a() + 1u32).is_divisible_u(419), || {
        "u_419 ≢ −1 (mod 419)".into()
    })?;
    ensure(corollary_u_congruence(419) == Ok(true), || {
        "p = 419 fails".into()
    })?;
    // with h(4p) below 2000, unit-only above
    let full: Vec<u64> = primes_3_mod_4(2000)
        .into_par_iter()
        .filter(|&p| corollary_u_congruence(p) != Ok(true))
        .collect();
    ensure(full.is_empty(), || format!("full check fails at {full:?}"))?;
    let primes = primes_3_mod_4(100_000);
    let bad: Vec<u64> = primes
        .par_iter()
        .copied()
        .filter(|&p| corollary_u_congruence_unit_only(p) != Ok(true))
        .collect();
    ensure(bad.is_empty(), || format!("fails at {bad:?}"))?;
    Ok(format!(
        "u_p ≡ (−1)^((p+1)/4) at all {} primes below 10^5",
        primes.len()
    ))
}

fn theorem_sweep() -> Outcome {
    let ns = eligible(2000);
    let failures: Vec<String> = ns
        .par_iter()
        .filter_map(|&n| match verify(n, &VerifyOptions::default()) {
            Ok(r) => passed_with_residual(&r).err(),
            Err(e) => Some(format!("n = {n}: {e}")),
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} values of n, all checks pass", ns.len()))
}

fn dual_backend() -> Outcome {
    let ns = eligible(201);
    let opts = VerifyOptions {
        exact: ExactMode::Always,
        ..VerifyOptions::default()
    };
    let failures: Vec<String> = ns
        .par_iter()
        .filter_map(|&n| {
            let r = verify(n, &opts).ok()?;
            let numeric = r.checks.get("numeric_match") == Some(&true);
            let exact = r.checks.get("exact_match") == Some(&true);
            // the raw products must also agree, independent of the closed form
            let prec = 256;
            let x = sn_eval_exact(n).ok()?.to_numeric(prec);
            let y = sn_eval_numeric(n, EvalPoint::I, prec).ok()?.value;
            let d = x.dist(&y);
            let close = d.is_zero() || d.log2().to_f64() < -((prec / 2) as f64);
            (!(numeric && exact && close)).then(|| format!("n = {n}"))
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!(
        "{} values of n agree exactly and numerically",
        ns.len()
    ))
}

fn h_forms(delta: i64) -> u64 {
    let mut count = 0;
    let mut a = 1i64;
    while 3 * a * a <= delta {
        for b in -a + 1..=a {
            if (b * b + delta) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b + delta) / (4 * a);
            if c > a || (c == a && b >= 0) {
                count += 1;
            }
        }
        a += 1;
    }
    count
}

fn class_number_checks() -> Outcome {
    let ns = eligible(5000);
    let failures: Vec<String> = ns
        .par_iter()
        .filter_map(|&n| {
            // h_imag cross-checks its two sums internally
            let h = match h_imag(n) {
                Ok(h) => h,
                Err(e) => return Some(e.to_string()),
            };
            if (h % 2 == 1) != is_prime(n) {
                return Some(format!("h(−{n}) = {h} has the wrong parity"));
            }
            if h != h_forms(n as i64) {
                return Some(format!("h(−{n}) = {h} disagrees with the form count"));
            }
            let sum: u64 = (1..n).filter(|&x| jacobi(x as i64, n) == Ok(1)).sum();
            (!sum.is_multiple_of(n)).then(|| format!("residue sum mod {n} = {}", sum % n))
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} values of n", ns.len()))
}

fn beta_identity() -> Outcome {
    let primes: Vec<u64> = (7..5000u64).step_by(8).filter(|&p| is_prime(p)).collect();
    let mut literal_misses = Vec::new();
    let mut shifted_misses = Vec::new();
    for &p in &primes {
        let b = beta(p).map_err(|e| e.to_string())? as i64;
        let h = h_imag_8p(p).map_err(|e| e.to_string())? as i64;
        ensure(h % 4 == 0, || format!("4 ∤ h(−8·{p}) = {h}"))?;
        let floor = (p / 8) as i64;
        if b != 1 + floor - h / 4 {
            literal_misses.push((p, b, 1 + floor - h / 4));
        }
        if b != 2 + floor - h / 4 {
            shifted_misses.push(p);
        }
    }
    let detail = format!(
        "β(p) = 1 + ⌊p/8⌋ − h(−8p)/4 fails at {}/{} primes (p = 7: β = {}, formula gives {}); \
         β(p) = 2 + ⌊p/8⌋ − h(−8p)/4 fails at {}",
        literal_misses.len(),
        primes.len(),
        literal_misses.first().map_or(0, |m| m.1),
        literal_misses.first().map_or(0, |m| m.2),
        shifted_misses.len(),
    );
    if literal_misses.is_empty() {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn parity_relation() -> Outcome {
    let ns = eligible(5000);
    let failures: Vec<u64> = ns
        .par_iter()
        .copied()
        .filter(|&n| {
            let s = delta4n(n).unwrap() + lambda4n(n).unwrap();
            if is_prime(n) {
                s % 2 != ((n + 5) / 4) % 2
            } else {
                !(euler_phi(n) / 4 + s).is_multiple_of(2)
            }
        })
        .collect();
    ensure(failures.is_empty(), || format!("fails at {failures:?}"))?;
    Ok(format!("{} values of n", ns.len()))
}

fn congruence_sweeps() -> Outcome {
    let mordell = primes_3_mod_4(2000);
    let chowla: Vec<u64> = (5..2000u64).step_by(4).filter(|&p| is_prime(p)).collect();
    let bad_m: Vec<u64> = mordell
        .par_iter()
        .copied()
        .filter(|&p| mordell_congruence(p) != Ok(true))
        .collect();
    let bad_c: Vec<u64> = chowla
        .par_iter()
        .copied()
        .filter(|&p| chowla_congruence(p) != Ok(true))
        .collect();
    ensure(bad_m.is_empty() && bad_c.is_empty(), || {
        format!("Mordell fails at {bad_m:?}, Chowla at {bad_c:?}")
    })?;
    Ok(format!(
        "Mordell at {} primes, Chowla at {} primes",
        mordell.len(),
        chowla.len()
    ))
}

fn aac_scan() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("aac.jsonl");
    let cfg = ScanConfig::new(ScanKind::Aac, 5, 9999);
    let summary = run_scan(&cfg, Some(&out), false).map_err(|e| e.to_string())?;
    ensure(summary.exit_code() == 0, || {
        format!("{} failing records", summary.failures)
    })?;
    let text = std::fs::read_to_string(&out).map_err(|e| e.to_string())?;
    let mut primes = 0;
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
        if v["status"] == "skip" {
            continue;
        }
        primes += 1;
        for check in ["b_not_divisible", "v_not_divisible", "aac_consistent"] {
            ensure(v["checks"][check] == true, || {
                format!("n = {}: {check}", v["n"])
            })?;
        }
    }
    ensure(primes == primes_3_mod_4(10_000).len(), || {
        format!("{primes} records")
    })?;
    // the library entry point agrees with the scan
    ensure(
        aac_check(9967).map(|o| o.is_counterexample()) == Ok(false),
        || "aac_check(9967)".into(),
    )?;
    Ok(format!("{primes} primes, no counterexample"))
}

fn gauss_identity() -> Outcome {
    let primes: Vec<u64> = (3..=61).filter(|&p| is_prime(p)).collect();
    for &p in &primes {
        let g = gauss_decomposition(p).map_err(|e| e.to_string())?;
        ensure(g.identity_holds(), || format!("p = {p}"))?;
    }
    let g5 = gauss_decomposition(5).map_err(|e| e.to_string())?;
    let ints = |v: &[i64]| v.iter().map(|&c| Integer::from(c)).collect::<Vec<_>>();
    ensure(g5.y == ints(&[2, 1, 2]) && g5.z == ints(&[0, -1]), || {
        format!("p = 5: Y = {:?}, Z = {:?}", g5.y, g5.z)
    })?;
    Ok(format!(
        "{} primes; Y_5 = 2x² + x + 2, Z_5 = −x",
        primes.len()
    ))
}

fn lemma_suite() -> Outcome {
    let ns = eligible(1000);
    let prec = LEMMA_PRECISION;
    let failures: Vec<String> = ns
        .par_iter()
        .filter_map(|&n| {
            let b = first_non_residue(n).ok()?;
            let mut ok = verify_lemma_sn1(n, 1, prec) == Ok(true)
                && verify_lemma_sn1(n, b, prec) == Ok(true)
                && verify_lemma_product(n, prec) == Ok(true);
            ok &= if is_prime(n) {
                verify_chapman(n, prec) == Ok(true)
            } else {
                verify_phi_at_i(n, prec) == Ok(true)
            };
            (!ok).then(|| format!("n = {n}"))
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} values of n at 2^−{}", ns.len(), prec / 2))
}

fn sun_sign() -> Outcome {
    let primes = primes_3_mod_4(2000);
    let bad: Vec<u64> = primes
        .par_iter()
        .copied()
        .filter(|&p| sun_sign_check(p) != Ok(true))
        .collect();
    ensure(bad.is_empty(), || format!("mismatch at {bad:?}"))?;
    Ok(format!("{} primes", primes.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    assert_eq!(NUMERIC_TOLERANCE_LOG2, -64);
    assert_eq!(INTEGRALITY_WINDOW_LOG2, -32);

    let criteria: Vec<Criterion> = vec![
        ("worked example n = 15", worked_example_15),
        ("worked example n = 7", || {
            worked_example_prime(7, (8, 3), 1, 1, (3, -1))
        }),
        ("worked example n = 11", || {
            worked_example_prime(11, (10, 3), 1, 2, (-3, 1))
        }),
        ("u_p congruence, p = 419 and sweep to 10^5", corollary_sweep),
        ("closed form of S_n(i), n < 2000", theorem_sweep),
        ("exact and numeric backends agree, n ≤ 200", dual_backend),
        ("class numbers h(−n), n < 5000", class_number_checks),
        (
            "β(p) against h(−8p), p ≡ 7 (mod 8), p < 5000",
            beta_identity,
        ),
        ("δ + λ parity, n < 5000", parity_relation),
        (
            "Mordell and Chowla congruences, p < 2000",
            congruence_sweeps,
        ),
        ("extended AAC scan, p < 10^4", aac_scan),
        ("Gauss decomposition, p ≤ 61", gauss_identity),
        ("product lemmas, n < 1000", lemma_suite),
        ("conjectured sign of s_p − t_p√p, p < 2000", sun_sign),
    ];

    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".to_string()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{t:.1?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} [{t:.1?}]");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
