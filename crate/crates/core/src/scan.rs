//! Range scans writing one JSONL record per `n`, with checkpoint/resume.
//!
//! The output file is the source of truth for which `n` are done: resume
//! reads it back, drops a torn final line, and only computes the rest. The
//! `<out>.ckpt` sidecar mirrors that state and is replaced atomically after
//! every batch.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::classnum::{h_imag, h_real, require_3_mod_4};
use crate::error::{invalid, Error, Result};
use crate::ntheory::is_prime;
use crate::quadratic::fundamental_unit;
use crate::theorem::congruences::{aac_from_report, sun_from_report, u_congruence_from_report};
use crate::theorem::{
    chowla_congruence, mordell_congruence, solve_case_prime, verify, UnitRecord,
    VerificationReport, VerifyOptions,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ScanKind {
    /// The closed form of `S_n(i)` at every eligible `n`.
    Theorem,
    /// `p ∤ b_p`, `p ∤ v_p` and the related congruences at primes `p ≡ 3 (mod 4)`.
    Aac,
    /// Factorial congruences at primes `p ≥ 5`.
    Congruences,
}

impl ScanKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Theorem => "theorem",
            Self::Aac => "aac",
            Self::Congruences => "congruences",
        }
    }

    pub fn eligible(self, n: u64) -> bool {
        match self {
            Self::Theorem => require_3_mod_4(n).is_ok(),
            Self::Aac => n > 3 && n % 4 == 3 && is_prime(n),
            Self::Congruences => n >= 5 && is_prime(n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
    Skip,
}

/// One JSONL line. Big integers are decimal strings.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub n: u64,
    pub kind: ScanKind,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_imag: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_real: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit: Option<UnitRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u64>,
    pub checks: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_log2: Option<f64>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Record {
    fn empty(n: u64, kind: ScanKind, status: Status) -> Self {
        Self {
            n,
            kind,
            status,
            h_imag: None,
            h_real: None,
            unit: None,
            a: None,
            b: None,
            alpha: None,
            beta: None,
            delta: None,
            lambda: None,
            checks: BTreeMap::new(),
            residual_log2: None,
            elapsed_ms: 0,
            error: None,
        }
    }

    fn from_report(kind: ScanKind, r: &VerificationReport) -> Self {
        Self {
            n: r.n,
            kind,
            status: if r.passed() { Status::Ok } else { Status::Fail },
            h_imag: r.h_imag,
            h_real: r.h_real,
            unit: r.unit.clone(),
            a: r.a.as_ref().map(|x| x.to_string()),
            b: r.b.as_ref().map(|x| x.to_string()),
            alpha: r.alpha,
            beta: r.beta,
            delta: r.delta,
            lambda: r.lambda,
            checks: r.checks.clone(),
            residual_log2: r.residual_log2,
            elapsed_ms: r.elapsed_ms,
            error: None,
        }
    }

    fn settle(&mut self) {
        self.status = if self.error.is_none() && self.checks.values().all(|&ok| ok) {
            Status::Ok
        } else {
            Status::Fail
        };
    }
}

/// Computes the record for one `n`. Never fails: errors become `fail` records.
pub fn scan_one(kind: ScanKind, n: u64, precision_bits: u32) -> Record {
    if !kind.eligible(n) {
        return Record::empty(n, kind, Status::Skip);
    }
    let start = Instant::now();
    let mut record = match compute(kind, n, precision_bits) {
        Ok(r) => r,
        Err(e) => {
            let mut r = Record::empty(n, kind, Status::Fail);
            r.error = Some(e.to_string());
            r
        }
    };
    record.elapsed_ms = start.elapsed().as_millis() as u64;
    record
}

fn compute(kind: ScanKind, n: u64, precision_bits: u32) -> Result<Record> {
    match kind {
        ScanKind::Theorem => {
            let opts = VerifyOptions {
                precision_bits,
                ..VerifyOptions::default()
            };
            Ok(Record::from_report(kind, &verify(n, &opts)?))
        }
        ScanKind::Aac => {
            let report = solve_case_prime(n, &VerifyOptions::algebraic())?;
            let mut record = Record::from_report(kind, &report);
            if report.passed() {
                let aac = aac_from_report(&report);
                record
                    .checks
                    .insert("b_not_divisible".into(), !aac.b_divisible);
                record
                    .checks
                    .insert("v_not_divisible".into(), !aac.v_divisible);
                record
                    .checks
                    .insert("aac_consistent".into(), aac.consistent);
                record
                    .checks
                    .insert("u_congruence".into(), u_congruence_from_report(&report));
                record
                    .checks
                    .insert("sun_sign".into(), sun_from_report(&report));
            }
            record.settle();
            Ok(record)
        }
        ScanKind::Congruences => {
            let mut record = Record::empty(n, kind, Status::Ok);
            if n % 4 == 3 {
                record.h_imag = Some(h_imag(n)?);
                record
                    .checks
                    .insert("mordell".into(), mordell_congruence(n)?);
            } else {
                let unit = fundamental_unit(n)?;
                record.h_real = Some(h_real(n, &unit)?);
                record.unit = Some(UnitRecord::from(&unit));
                record.checks.insert("chowla".into(), chowla_congruence(n)?);
            }
            record.settle();
            Ok(record)
        }
    }
}

/// The `<out>.ckpt` sidecar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCheckpoint {
    pub kind: ScanKind,
    pub min: u64,
    pub max: u64,
    /// Every `n` in `[min, contiguous]` is done; `None` if `min` is not.
    pub contiguous: Option<u64>,
    /// Done `n` above `contiguous`, ascending.
    pub exceptions: Vec<u64>,
    pub out: PathBuf,
    pub failures: u64,
}

impl ScanCheckpoint {
    fn from_done(cfg: &ScanConfig, out: &Path, done: &BTreeSet<u64>, failures: u64) -> Self {
        let mut contiguous = None;
        let mut next = cfg.min;
        for &n in done.range(cfg.min..=cfg.max) {
            if n != next {
                break;
            }
            contiguous = Some(n);
            next = n + 1;
        }
        let floor = contiguous.map_or(cfg.min, |c| c + 1);
        Self {
            kind: cfg.kind,
            min: cfg.min,
            max: cfg.max,
            contiguous,
            exceptions: if floor > cfg.max {
                Vec::new()
            } else {
                done.range(floor..=cfg.max).copied().collect()
            },
            out: out.to_path_buf(),
            failures,
        }
    }

    pub fn path_for(out: &Path) -> PathBuf {
        let mut name = out.as_os_str().to_owned();
        name.push(".ckpt");
        PathBuf::from(name)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(io_error(path))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("{}: bad checkpoint: {e}", path.display())))
    }

    /// Write-temp-then-rename.
    fn store(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        let body = serde_json::to_string_pretty(self).expect("checkpoint serializes");
        fs::write(&tmp, body).map_err(io_error(&tmp))?;
        fs::rename(&tmp, path).map_err(io_error(path))
    }

    pub fn is_complete(&self) -> bool {
        self.contiguous == Some(self.max)
    }
}

fn io_error(path: &Path) -> impl Fn(io::Error) -> Error + '_ {
    move |e| Error::InvalidInput(format!("{}: {e}", path.display()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub kind: ScanKind,
    pub min: u64,
    pub max: u64,
    /// Worker threads; 0 means available parallelism.
    pub jobs: usize,
    pub precision_bits: u32,
    /// Records per checkpoint.
    pub batch: usize,
}

impl ScanConfig {
    pub fn new(kind: ScanKind, min: u64, max: u64) -> Self {
        Self {
            kind,
            min,
            max,
            jobs: 0,
            precision_bits: 256,
            batch: 64,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanSummary {
    /// Records written by this run.
    pub emitted: u64,
    /// Failing records in the whole output, including earlier runs.
    pub failures: u64,
    /// Ineligible `n` in range, which get no record.
    pub skipped: u64,
}

impl ScanSummary {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failures > 0)
    }
}

/// Reads the `n` and status of every complete record, truncating a torn
/// final line in place.
fn read_existing(path: &Path, kind: ScanKind) -> Result<BTreeMap<u64, Status>> {
    let mut file = OpenOptions::new()
        .read(true)
        .write(true)
        .open(path)
        .map_err(io_error(path))?;
    let mut reader = BufReader::new(&mut file);
    let mut seen = BTreeMap::new();
    let mut good_len = 0u64;
    let mut line = String::new();
    loop {
        line.clear();
        let read = reader.read_line(&mut line).map_err(io_error(path))?;
        if read == 0 {
            break;
        }
        if !line.ends_with('\n') {
            break;
        }
        let value: serde_json::Value = match serde_json::from_str(line.trim_end()) {
            Ok(v) => v,
            Err(_) if line.trim().is_empty() => {
                good_len += read as u64;
                continue;
            }
            Err(e) => {
                return invalid(format!("{}: unreadable record: {e}", path.display()));
            }
        };
        if value["kind"] != kind.as_str() {
            return invalid(format!(
                "{}: holds {} records, not {}",
                path.display(),
                value["kind"],
                kind.as_str()
            ));
        }
        let n = value["n"].as_u64();
        let status: Option<Status> = serde_json::from_value(value["status"].clone()).ok();
        match (n, status) {
            (Some(n), Some(s)) => {
                seen.insert(n, s);
            }
            _ => return invalid(format!("{}: record without n/status", path.display())),
        }
        good_len += read as u64;
    }
    drop(reader);
    if file.metadata().map_err(io_error(path))?.len() != good_len {
        file.set_len(good_len).map_err(io_error(path))?;
    }
    file.seek(SeekFrom::End(0)).map_err(io_error(path))?;
    Ok(seen)
}

/// Runs a scan into `out` (stdout when `None`).
///
/// With `resume`, records already in `out` are kept and not recomputed.
pub fn run_scan(cfg: &ScanConfig, out: Option<&Path>, resume: bool) -> Result<ScanSummary> {
    if cfg.min > cfg.max {
        return invalid(format!("min {} exceeds max {}", cfg.min, cfg.max));
    }
    if resume && out.is_none() {
        return invalid("--resume needs --out");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;

    let mut done: BTreeSet<u64> = BTreeSet::new();
    let mut summary = ScanSummary::default();
    let mut sink: Box<dyn Write> = match out {
        None => Box::new(io::stdout().lock()),
        Some(path) => {
            if resume && path.exists() {
                let ckpt_path = ScanCheckpoint::path_for(path);
                if ckpt_path.exists() {
                    let ckpt = ScanCheckpoint::load(&ckpt_path)?;
                    if ckpt.kind != cfg.kind {
                        return invalid(format!("checkpoint is for a {} scan", ckpt.kind.as_str()));
                    }
                }
                for (n, status) in read_existing(path, cfg.kind)? {
                    if (cfg.min..=cfg.max).contains(&n) {
                        done.insert(n);
                        match status {
                            Status::Fail => summary.failures += 1,
                            Status::Skip | Status::Ok => {}
                        }
                    }
                }
                Box::new(
                    OpenOptions::new()
                        .append(true)
                        .open(path)
                        .map_err(io_error(path))?,
                )
            } else {
                Box::new(File::create(path).map_err(io_error(path))?)
            }
        }
    };

    // ineligible n get no record but count as done
    let mut pending = Vec::new();
    for n in cfg.min..=cfg.max {
        if !cfg.kind.eligible(n) {
            if done.insert(n) {
                summary.skipped += 1;
            }
        } else if !done.contains(&n) {
            pending.push(n);
        }
    }
    let ckpt_path = out.map(ScanCheckpoint::path_for);
    let store = |done: &BTreeSet<u64>, failures: u64| -> Result<()> {
        match (&ckpt_path, out) {
            (Some(ckpt), Some(out)) => {
                ScanCheckpoint::from_done(cfg, out, done, failures).store(ckpt)
            }
            _ => Ok(()),
        }
    };
    store(&done, summary.failures)?;

    for batch in pending.chunks(cfg.batch.max(1)) {
        let records: Vec<Record> = pool.install(|| {
            use rayon::prelude::*;
            batch
                .par_iter()
                .map(|&n| scan_one(cfg.kind, n, cfg.precision_bits))
                .collect()
        });
        for r in &records {
            let line = serde_json::to_string(r).expect("record serializes");
            writeln!(sink, "{line}").map_err(|e| Error::InvalidInput(format!("write: {e}")))?;
            match r.status {
                Status::Fail => summary.failures += 1,
                Status::Skip => summary.skipped += 1,
                Status::Ok => {}
            }
            summary.emitted += 1;
            done.insert(r.n);
        }
        sink.flush()
            .map_err(|e| Error::InvalidInput(format!("write: {e}")))?;
        store(&done, summary.failures)?;
    }
    Ok(summary)
}
