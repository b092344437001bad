//! Hypercyclic-subspace criteria, each returning a [`Verdict`](crate::Verdict).

mod gap;
mod nosubspace;
mod rank;
mod schedule;
mod support;
mod universal;

pub use gap::{ws_gap_criterion, WsGapParams};
pub use nosubspace::{no_subspace_witness_verify, NoSubspaceWitness};
pub use rank::{rank_criterion, RankParams};
pub use schedule::frequent_schedule_criterion;
pub use support::{cor_bes, cor_c, support_criteria};
pub use universal::{universal_span_criterion, TargetFamily, TargetTail};

use crate::error::Result;
use crate::linalg::Vector;
use crate::operator::ColumnFiniteOperator;

/// Columns `lo..hi` of rows `0..l`, each column as a vector of length `l`.
pub(crate) fn column_block(t: &ColumnFiniteOperator, l: usize, lo: i64, hi: i64) -> Result<Vec<Vector>> {
    let rows = (0..l as i64).map(|i| t.row(i)).collect::<Result<Vec<_>>>()?;
    Ok((lo..hi).map(|j| rows.iter().map(|r| r.get(j)).collect()).collect())
}

/// Largest support index among rows `0..l`.
pub(crate) fn max_support(t: &ColumnFiniteOperator, l: usize) -> Result<i64> {
    (0..l as i64).try_fold(0, |m, i| Ok(m.max(t.support_index(i)?)))
}
