//! Exact and high-precision arithmetic around the product
//! `S_n(x) = ∏ (x − ζ_n^c)` over quadratic residues `c` modulo a squarefree
//! `n ≡ 3 (mod 4)`.
//!
//! The crate evaluates `S_n(i)` two independent ways (MPFR-backed complex
//! floats and exact `Z[ζ_4n]` arithmetic), computes fundamental units and
//! class numbers of quadratic fields, and checks the closed forms tying them
//! together: `S_n(i)` as a signed power of `ε_4n`, the Pell pairs it yields,
//! the congruence `u_p ≡ (−1)^((p+1)/4) (mod p)`, and the Ankeny–Artin–Chowla
//! criterion `p ∤ b_p`.
//!
//! Module map:
//!
//! - [`ntheory`]: Jacobi/Kronecker symbols, primality, factoring, `isqrt`.
//! - [`quadratic`]: `QuadNumber`, continued fractions, fundamental units.
//! - [`classnum`]: class numbers `h(−n)`, `h(−8p)` and `h(D)` for `D > 0`.
//! - [`cyclotomic`]: `BigComplex` and `CycElement` backends, Gauss's `Y_p, Z_p`.
//! - [`theorem`]: the verification engine producing `VerificationReport`s.
//! - [`scan`]: JSONL range scans with checkpoint/resume.
//! - [`cli`]: the `qcyclo` command line.
//!
//! ```
//! use qcyclo::theorem::{verify, VerifyOptions};
//!
//! let report = verify(15, &VerifyOptions::default()).unwrap();
//! assert!(report.passed());
//! let (a, b) = report.pair().unwrap();
//! assert_eq!((a.to_i32(), b.to_i32()), (Some(4), Some(-1)));
//! ```
//!
//! See `examples/` for one runnable program per capability.

pub mod classnum;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod ntheory;
pub mod quadratic;
pub mod scan;
pub mod theorem;

pub use error::{Error, Result};
pub use quadratic::QuadNumber;
