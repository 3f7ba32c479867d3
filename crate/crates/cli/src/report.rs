//! Report assembly and serialization.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use frw_spin_reference::{ComparisonEntry, Status};

use crate::config::{ConfigEcho, Format};
use crate::error::CliError;
use crate::invariants::Check;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportEntry {
    pub quantity: String,
    pub indices: Vec<usize>,
    pub computed: [f64; 2],
    pub reference: [f64; 2],
    pub abs_err: f64,
    pub status: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub matches: usize,
    pub mismatches: usize,
    pub errata: usize,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub config: ConfigEcho,
    pub entries: Vec<ReportEntry>,
    pub summary: Summary,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl ReportEntry {
    pub fn from_comparison(e: &ComparisonEntry) -> Self {
        ReportEntry {
            quantity: e.quantity.clone(),
            indices: e.indices.clone(),
            computed: pair(e.computed),
            reference: pair(e.reference),
            abs_err: e.abs_err,
            status: e.status.name().to_string(),
        }
    }

    pub fn from_check(c: &Check, run_tol: f64) -> Self {
        let status = if c.passes(run_tol) { Status::Match } else { Status::Mismatch };
        ReportEntry {
            quantity: c.name.clone(),
            indices: Vec::new(),
            computed: [c.residual, 0.0],
            reference: [0.0, 0.0],
            abs_err: c.residual,
            status: status.name().to_string(),
        }
    }

    fn rank(&self) -> u8 {
        match self.status.as_str() {
            "mismatch" => 2,
            "suspected-erratum" => 1,
            _ => 0,
        }
    }

    /// Whether `self` is a worse witness than `other` for the same slot.
    fn worse_than(&self, other: &ReportEntry) -> bool {
        self.rank() > other.rank() || (self.rank() == other.rank() && self.abs_err > other.abs_err)
    }
}

/// Keeps the worst entry per `(quantity, indices)`, sorted by that key.
pub fn aggregate(entries: impl IntoIterator<Item = ReportEntry>) -> Vec<ReportEntry> {
    let mut worst: BTreeMap<(String, Vec<usize>), ReportEntry> = BTreeMap::new();
    for e in entries {
        let key = (e.quantity.clone(), e.indices.clone());
        match worst.get(&key) {
            Some(old) if !e.worse_than(old) => {}
            _ => {
                worst.insert(key, e);
            }
        }
    }
    worst.into_values().collect()
}

pub fn summarize(entries: &[ReportEntry]) -> Summary {
    let mut s = Summary::default();
    for e in entries {
        match e.status.as_str() {
            "match" => s.matches += 1,
            "mismatch" => s.mismatches += 1,
            _ => s.errata += 1,
        }
    }
    s
}

fn csv_rows(entries: &[ReportEntry]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "quantity",
        "indices",
        "computed_re",
        "computed_im",
        "reference_re",
        "reference_im",
        "abs_err",
        "status",
    ])
    .map_err(|e| CliError::Io(e.to_string()))?;
    for e in entries {
        let idx = e.indices.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        w.write_record([
            e.quantity.clone(),
            idx,
            e.computed[0].to_string(),
            e.computed[1].to_string(),
            e.reference[0].to_string(),
            e.reference[1].to_string(),
            e.abs_err.to_string(),
            e.status.clone(),
        ])
        .map_err(|e| CliError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

pub fn render<T: Serialize>(value: &T, entries: &[ReportEntry], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv_rows(entries),
    }
}

/// Writes to `out`, or to standard output when no path is given.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}
