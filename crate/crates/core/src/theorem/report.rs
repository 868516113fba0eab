//! The structured outcome of one verification.

use std::collections::BTreeMap;

use rug::Integer;
use serde::{Serialize, Serializer};

use crate::quadratic::QuadNumber;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseKind {
    Prime,
    Composite,
}

/// A unit `(u + v√n)/den`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitRecord {
    #[serde(serialize_with = "decimal")]
    pub u: Integer,
    #[serde(serialize_with = "decimal")]
    pub v: Integer,
    pub den: u32,
}

impl From<&QuadNumber> for UnitRecord {
    fn from(x: &QuadNumber) -> Self {
        Self {
            u: x.a().clone(),
            v: x.b().clone(),
            den: x.denominator(),
        }
    }
}

/// `A + B√n = ε^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitPower {
    #[serde(serialize_with = "decimal")]
    pub a: Integer,
    #[serde(serialize_with = "decimal")]
    pub b: Integer,
    pub exponent: u64,
}

/// Everything computed while verifying the closed form of `S_n(i)` at one `n`.
///
/// `a`, `b` are the Pell pair: `S_n(i) = a + b√n` for composite `n`, and
/// `(i − (2/p)) S_p(i) = a + b√p` for prime `n = p`. Each entry of `checks`
/// names one identity; a report passes iff every entry is true.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub n: u64,
    pub case: CaseKind,
    pub h_imag: Option<u64>,
    pub h_real: Option<u64>,
    pub unit: Option<UnitRecord>,
    pub unit_power: Option<UnitPower>,
    pub alpha: Option<u64>,
    pub beta: Option<u64>,
    pub delta: Option<u64>,
    pub lambda: Option<u64>,
    #[serde(serialize_with = "opt_decimal")]
    pub a: Option<Integer>,
    #[serde(serialize_with = "opt_decimal")]
    pub b: Option<Integer>,
    pub signs: BTreeMap<String, i32>,
    pub residual_log2: Option<f64>,
    pub precision_bits: u32,
    pub checks: BTreeMap<String, bool>,
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub(crate) fn new(n: u64, case: CaseKind, precision_bits: u32) -> Self {
        Self {
            n,
            case,
            h_imag: None,
            h_real: None,
            unit: None,
            unit_power: None,
            alpha: None,
            beta: None,
            delta: None,
            lambda: None,
            a: None,
            b: None,
            signs: BTreeMap::new(),
            residual_log2: None,
            precision_bits,
            checks: BTreeMap::new(),
            notes: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub(crate) fn check(&mut self, name: &str, ok: bool) -> bool {
        self.checks.insert(name.to_string(), ok);
        ok
    }

    /// True iff at least one check ran and none failed.
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.values().all(|&ok| ok)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, &ok)| !ok)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn pair(&self) -> Option<(&Integer, &Integer)> {
        Some((self.a.as_ref()?, self.b.as_ref()?))
    }
}

fn decimal<S: Serializer>(x: &Integer, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn opt_decimal<S: Serializer>(x: &Option<Integer>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}
