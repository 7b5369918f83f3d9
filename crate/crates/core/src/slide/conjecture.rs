//! Observed connectivity of every ordered signature against the expectation
//! that exactly the irreducible and quasi-irreducible signatures are
//! connected. This is an empirical check on small cubes, not a proof.

use super::explore::{explore_signature, ComponentReport, ExploreMode, ExploreOptions};
use crate::cube::SAFE_DIM;
use crate::error::{Error, Result};
use crate::signature::{enumerate_ordered_signatures, ClassKind, Signature};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Consistent,
    Inconsistent,
    /// The census did not finish within the resource limits.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub signature: Signature,
    pub kind: ClassKind,
    pub expected_connected: bool,
    pub components: Option<usize>,
    pub sizes: Vec<u64>,
    pub trees: Option<u64>,
    pub mode: ExploreMode,
    pub status: RowStatus,
    pub note: Option<String>,
}

/// A saturated signature against its truncation to the directions below
/// saturation; the two should be connected or disconnected together.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationCheck {
    pub signature: Signature,
    pub truncation: Signature,
    pub connected: Option<bool>,
    pub truncation_connected: Option<bool>,
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub label: String,
    pub n: usize,
    pub rows: Vec<ConjectureRow>,
    pub saturation: Vec<SaturationCheck>,
    pub skipped: usize,
    pub inconsistent: usize,
}

fn row(sig: &Signature, rep: &ComponentReport) -> ConjectureRow {
    let kind = sig.classify().kind;
    let expected_connected = kind != ClassKind::StrictlyReducible;
    let observed = rep.is_connected();
    let status = match observed {
        None => RowStatus::Skipped,
        Some(c) if c == expected_connected => RowStatus::Consistent,
        Some(_) => RowStatus::Inconsistent,
    };
    ConjectureRow {
        signature: sig.clone(),
        kind,
        expected_connected,
        components: observed.map(|_| rep.components.len()),
        sizes: rep.sizes(),
        trees: rep.total,
        mode: rep.mode,
        status,
        note: rep.note.clone(),
    }
}

/// Explores every ordered signature of `Q_n` with `opts`.
pub fn test_conjecture(n: usize, opts: &ExploreOptions) -> Result<ConjectureReport> {
    test_conjecture_with(n, |s| explore_signature(s, opts))
}

/// Like [`test_conjecture`], taking the component reports from `explore`.
pub fn test_conjecture_with(
    n: usize,
    mut explore: impl FnMut(&Signature) -> Result<ComponentReport>,
) -> Result<ConjectureReport> {
    if n == 0 || n > SAFE_DIM {
        return Err(Error::DimensionUnsupported {
            n,
            max: SAFE_DIM,
            overridable: false,
        });
    }
    let mut connected: BTreeMap<Vec<u32>, Option<bool>> = BTreeMap::new();
    let mut rows = Vec::new();
    for sig in enumerate_ordered_signatures(n) {
        let rep = explore(&sig)?;
        connected.insert(sig.entries().to_vec(), rep.is_connected());
        rows.push(row(&sig, &rep));
    }
    let mut saturation = Vec::new();
    for sig in enumerate_ordered_signatures(n) {
        let Some(r) = sig.classify().saturated_above else {
            continue;
        };
        let truncation = Signature::new(sig.entries()[..r].to_vec())?;
        let truncation_connected = match connected.get(truncation.entries()) {
            Some(&c) => c,
            None => {
                let c = explore(&truncation)?.is_connected();
                connected.insert(truncation.entries().to_vec(), c);
                c
            }
        };
        let c = connected[sig.entries()];
        saturation.push(SaturationCheck {
            signature: sig,
            truncation,
            connected: c,
            truncation_connected,
            agrees: c.zip(truncation_connected).map(|(a, b)| a == b),
        });
    }
    let skipped = rows.iter().filter(|r| r.status == RowStatus::Skipped).count();
    let inconsistent = rows.iter().filter(|r| r.status == RowStatus::Inconsistent).count();
    Ok(ConjectureReport {
        label: format!("empirical, n ≤ {n}"),
        n,
        rows,
        saturation,
        skipped,
        inconsistent,
    })
}
