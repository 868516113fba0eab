//! Verification of the closed form of `S_n(i)` and its consequences.
//!
//! Invalid inputs are errors. A failed identity is not: it is recorded in the
//! returned [`VerificationReport`] or boolean, so scans keep going.

mod cases;
pub(crate) mod congruences;
mod counts;
mod dirichlet;
mod lemmas;
mod report;

pub use cases::{
    gamma4n, solve_case_composite, solve_case_prime, verify, ExactMode, VerifyOptions,
    ANSWER_GUARD_BITS, EXACT_AUTO_LIMIT, NUMERIC_TOLERANCE_LOG2,
};
pub use congruences::{
    aac_check, chowla_congruence, corollary_u_congruence, corollary_u_congruence_unit_only,
    mordell_congruence, sun_sign_check, AacOutcome,
};
pub use counts::{alpha, beta, delta4n, lambda4n};
pub use dirichlet::{dirichlet_decomposition, DirichletPair};
pub use lemmas::{
    first_non_residue, verify_chapman, verify_lemma_product, verify_lemma_sn1, verify_phi_at_i,
};
pub use report::{CaseKind, UnitPower, UnitRecord, VerificationReport};
