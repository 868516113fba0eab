//! A resumable Ankeny–Artin–Chowla scan writing JSONL.
//!
//! ```text
//! cargo run --release --example aac_scan [MAX] [OUT]
//! ```
//!
//! Rerunning with the same OUT resumes and emits nothing new.

use std::path::PathBuf;

use qcyclo::scan::{run_scan, ScanCheckpoint, ScanConfig, ScanKind};
use qcyclo::Result;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let max: u64 = args.next().map_or(2000, |s| s.parse().expect("max"));
    let out = args.next().map_or_else(
        || std::env::temp_dir().join("qcyclo-aac.jsonl"),
        PathBuf::from,
    );
    let cfg = ScanConfig::new(ScanKind::Aac, 3, max);
    let summary = run_scan(&cfg, Some(&out), true)?;
    let ckpt = ScanCheckpoint::load(&ScanCheckpoint::path_for(&out))?;
    println!(
        "{}: {} new records, {} failures",
        out.display(),
        summary.emitted,
        summary.failures
    );
    println!("checkpoint complete: {}", ckpt.is_complete());
    std::process::exit(summary.exit_code());
}
