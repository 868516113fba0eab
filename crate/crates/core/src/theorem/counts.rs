//! Counting functions over residue classes.

use crate::classnum::require_3_mod_4;
use crate::error::{invalid, Result};
use crate::ntheory::{is_prime, kronecker, QuadraticCharacter};

pub(crate) fn require_prime_3_mod_4(p: u64) -> Result<()> {
    if p <= 3 || p % 4 != 3 || !is_prime(p) {
        return invalid(format!("p must be a prime ≡ 3 (mod 4) with p > 3, got {p}"));
    }
    Ok(())
}

/// `#{0 < c < n/8 : (c/n) = 1} + #{5n/8 < c < n : (c/n) = 1}`.
pub fn alpha(n: u64) -> Result<u64> {
    require_3_mod_4(n)?;
    let chi = QuadraticCharacter::jacobi(n)?;
    Ok(chi
        .classes(1)
        .filter(|&c| 8 * c < n || 8 * c > 5 * n)
        .count() as u64)
}

/// `1 + #{p/8 < c < 3p/8 : (c/p) = −1}`.
pub fn beta(p: u64) -> Result<u64> {
    require_prime_3_mod_4(p)?;
    let chi = QuadraticCharacter::jacobi(p)?;
    Ok(1 + chi
        .classes(-1)
        .filter(|&c| 8 * c > p && 8 * c < 3 * p)
        .count() as u64)
}

/// `#{0 < c < n : (4n/c) = −1}`, Kronecker symbol.
pub fn delta4n(n: u64) -> Result<u64> {
    require_3_mod_4(n)?;
    let d = 4 * n as i64;
    Ok((1..n as i64).filter(|&c| kronecker(d, c) == -1).count() as u64)
}

/// `#{0 < c < n/2 : (c/n) = (2/n)}`.
pub fn lambda4n(n: u64) -> Result<u64> {
    require_3_mod_4(n)?;
    let chi = QuadraticCharacter::jacobi(n)?;
    let two = chi.at(2);
    Ok((1..=n / 2).filter(|&c| chi.at(c as i64) == two).count() as u64)
}
