//! Gauss's decomposition `2S_p(x) = Y_p(x) + √p* Z_p(x)`.

use rug::{Float, Integer};

use super::exact::{gauss_sum, CycElement};
use super::poly::{cyclotomic_poly, poly_mul, poly_scale, poly_sub, trim};
use crate::error::{invalid, Error, Result};
use crate::ntheory::{is_prime, QuadraticCharacter};

/// Largest prime accepted by [`gauss_decomposition`]; cost grows like `p³`.
pub const GAUSS_P_LIMIT: u64 = 400;

/// `Y_p`, `Z_p` with `4Φ_p = Y_p² − p* Z_p²`, coefficients ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussDecomposition {
    pub p: u64,
    pub y: Vec<Integer>,
    pub z: Vec<Integer>,
}

impl GaussDecomposition {
    /// `p* = (−1)^((p−1)/2) p`.
    pub fn p_star(&self) -> i64 {
        if self.p % 4 == 1 {
            self.p as i64
        } else {
            -(self.p as i64)
        }
    }

    /// Whether `4Φ_p == Y² − p* Z²` holds exactly.
    pub fn identity_holds(&self) -> bool {
        let lhs = poly_scale(&cyclotomic_poly(self.p), &Integer::from(4));
        let rhs = poly_sub(
            &poly_mul(&self.y, &self.y),
            &poly_scale(&poly_mul(&self.z, &self.z), &Integer::from(self.p_star())),
        );
        lhs == rhs
    }
}

/// Coefficients of `∏ (x − ζ_p^c)` over residues `c`, each in `Z[ζ_p]`.
fn residue_product(p: u64, chi: &QuadraticCharacter) -> Vec<CycElement> {
    let m = p as usize;
    let mut coeffs = vec![CycElement::one(m)];
    for c in chi.classes(1) {
        let mut next = vec![CycElement::zero(m); coeffs.len() + 1];
        for (j, a) in coeffs.iter().enumerate() {
            next[j + 1] = &next[j + 1] + a;
            next[j] = &next[j] - &a.shift(c as i64);
        }
        coeffs = next;
    }
    coeffs
}

// g = +√p for p ≡ 1 (mod 4) and +i√p for p ≡ 3 (mod 4)
fn check_gauss_sign(p: u64, g: &CycElement) -> Result<()> {
    let prec = 128;
    let v = g.to_numeric(prec);
    let root = Float::with_val(prec, p).sqrt();
    let (re, im) = if p % 4 == 1 {
        (root, Float::new(prec))
    } else {
        (Float::new(prec), root)
    };
    let err = Float::with_val(prec, v.re() - &re).abs() + Float::with_val(prec, v.im() - &im).abs();
    if err > 1e-20 {
        return Err(Error::SignCheck(format!(
            "Σ (t/{p}) ζ^t embeds as {v}, expected +√p*"
        )));
    }
    Ok(())
}

/// Expands `S_p` over `Z[ζ_p]`, forms `T_p` by `ζ ↦ ζ^b` for a non-residue
/// `b`, and returns `Y = S + T`, `Z = (S − T)/√p*`.
pub fn gauss_decomposition(p: u64) -> Result<GaussDecomposition> {
    if p < 3 || !is_prime(p) {
        return invalid(format!("p must be an odd prime, got {p}"));
    }
    if p > GAUSS_P_LIMIT {
        return Err(Error::SizeCap(format!(
            "Gauss decomposition is capped at p ≤ {GAUSS_P_LIMIT}, got {p}"
        )));
    }
    let chi = QuadraticCharacter::jacobi(p)?;
    let b = chi.classes(-1).next().expect("odd prime has a non-residue");
    let g = gauss_sum(p)?;
    check_gauss_sign(p, &g)?;
    let p_star = if p % 4 == 1 { p as i64 } else { -(p as i64) };

    let s = residue_product(p, &chi);
    let mut y = Vec::with_capacity(s.len());
    let mut z = Vec::with_capacity(s.len());
    for (j, sj) in s.iter().enumerate() {
        let tj = sj.galois(b as i64)?;
        let yj = (sj + &tj).as_rational_integer().ok_or_else(|| {
            Error::CrossCheck(format!("Y_{p} coefficient {j} is not a rational integer"))
        })?;
        let zj = (&(sj - &tj) * &g).as_rational_integer().ok_or_else(|| {
            Error::CrossCheck(format!("Z_{p} coefficient {j} is not a rational integer"))
        })?;
        if !zj.is_divisible(&Integer::from(p_star)) {
            return Err(Error::CrossCheck(format!(
                "Z_{p} coefficient {j}: {zj} is not divisible by p*"
            )));
        }
        y.push(yj);
        z.push(zj / p_star);
    }
    trim(&mut y);
    trim(&mut z);
    let out = GaussDecomposition { p, y, z };
    if !out.identity_holds() {
        return Err(Error::CrossCheck(format!("4Φ_{p} ≠ Y² − p*Z²")));
    }
    Ok(out)
}
