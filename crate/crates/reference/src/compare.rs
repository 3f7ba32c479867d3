//! Entrywise comparison of engine values against the printed tables.

use std::fmt;

use num_complex::Complex64;

use frw_spin_core::{Point, Result, ScaleFactor};

use crate::registry::{evaluate_engine, evaluate_reference};
use crate::tables::ReferenceTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Match,
    Mismatch,
    SuspectedErratum,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::SuspectedErratum => "suspected-erratum",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonEntry {
    pub quantity: String,
    /// Indices as printed: spinor indices from one, spatial from zero.
    pub indices: Vec<usize>,
    pub computed: Complex64,
    /// The verbatim printed value.
    pub reference: Complex64,
    pub abs_err: f64,
    pub status: Status,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ComparisonReport {
    pub entries: Vec<ComparisonEntry>,
}

impl ComparisonReport {
    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Mismatch) == 0
    }

    pub fn max_abs_err(&self) -> f64 {
        self.entries.iter().map(|e| e.abs_err).fold(0.0, f64::max)
    }
}

fn all_indices(t: &ReferenceTensor) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for axis in &t.axes {
        out = out
            .into_iter()
            .flat_map(|head| {
                (0..axis.dim()).map(move |i| {
                    let mut v = head.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// Classifies each entry of `computed` against the table `reference`.
pub fn classify(quantity: &str, computed: &[Complex64], reference: &ReferenceTensor, tol: f64) -> ComparisonReport {
    assert_eq!(computed.len(), reference.values.len(), "layout mismatch for {quantity}");
    let entries = all_indices(reference)
        .into_iter()
        .map(|idx| {
            let k = reference.offset(&idx);
            let (c, r) = (computed[k], reference.values[k]);
            let abs_err = (c - r).norm();
            let status = if abs_err <= tol {
                Status::Match
            } else if reference.erratum_at(&idx).is_some_and(|e| (c - e.corrected).norm() <= tol) {
                Status::SuspectedErratum
            } else {
                Status::Mismatch
            };
            let indices = idx.iter().zip(&reference.axes).map(|(i, a)| a.report(*i)).collect();
            ComparisonEntry { quantity: quantity.to_string(), indices, computed: c, reference: r, abs_err, status }
        })
        .collect();
    ComparisonReport { entries }
}

/// Evaluates both sides at `p` and compares them entry by entry.
pub fn compare(id: &str, p: &Point, sf: &ScaleFactor, tol: f64) -> Result<ComparisonReport> {
    let reference = evaluate_reference(id, p, sf)?;
    let computed = evaluate_engine(id, p, sf)?;
    Ok(classify(id, &computed, &reference, tol))
}
