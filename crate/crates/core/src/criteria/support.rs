use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::operator::{ColumnFiniteOperator, OperatorSequence};
use crate::seq::IndexDomain;
use crate::support::SupportProfile;
use crate::verdict::{Status, Verdict, Witness};

/// Printed prefix of support indices in profile witnesses.
const PREFIX_SHOWN: usize = 32;

/// Decides `c_i > i + 1` and pairwise distinctness of the `c_i`.
///
/// Exact when the operator has a band rule. For explicit rows the available
/// rows are checked, and a violation among them is still exact.
pub fn cor_bes(t: &ColumnFiniteOperator, horizon: u64) -> Result<Verdict> {
    if t.domain() != IndexDomain::Unilateral {
        return Err(Error::BilateralUnsupported);
    }
    const NAME: &str = "cor-bes";
    if t.rule().is_none() {
        let n = t.available_rows().unwrap_or(0).min(horizon as i64);
        let mut seen = std::collections::HashMap::new();
        for i in 0..n {
            let c = t.support_index(i)?;
            if c <= i + 1 {
                return Ok(Verdict::refuted(NAME, format!("c_{i} = {c} <= {}", i + 1)));
            }
            if let Some(j) = seen.insert(c, i) {
                return Ok(Verdict::refuted(NAME, format!("c_{j} = c_{i} = {c}")));
            }
        }
        return Ok(Verdict::new(NAME, Status::VerifiedUpTo(n as u64))
            .note("operator has explicit rows only; rows beyond the block are not covered"));
    }
    let p = SupportProfile::of(t)?;
    if let Some(i) = p.first_not_exceeding() {
        return Ok(Verdict::refuted(NAME, format!("c_{i} = {} <= {}", p.c(i), i + 1)));
    }
    if let Some((i, j)) = p.collision() {
        return Ok(Verdict::refuted(NAME, format!("c_{i} = c_{j} = {}", p.c(i))));
    }
    let shown = (p.threshold as usize).clamp(1, PREFIX_SHOWN);
    Ok(Verdict::new(NAME, Status::Holds).with_witness(Witness::SupportProfile {
        stride: p.stride,
        threshold: p.threshold,
        prefix: (0..shown as i64).map(|i| p.c(i)).collect(),
        top_offsets: p.top.clone(),
    }))
}

/// Greedy search for times `n_1 < n_2 < ...` and rows `i_k = k - 1` such that
/// the support indices of `T_{n_k}` on rows `0..=i_k` are distinct and at least `k`.
pub fn cor_c(ops: &OperatorSequence, horizon: u64) -> Result<Verdict> {
    if ops.domain() != IndexDomain::Unilateral {
        return Err(Error::BilateralUnsupported);
    }
    let members = ops.members(horizon)?;
    let (mut times, mut rows) = (Vec::new(), Vec::new());
    let mut n = 0usize;
    let mut k = 1i64;
    while n < members.len() {
        let t = &members[n];
        n += 1;
        let cs = (0..k).map(|i| t.support_index(i)).collect::<Result<Vec<_>>>()?;
        let distinct = cs.iter().collect::<HashSet<_>>().len() == cs.len();
        if distinct && cs.iter().all(|&c| c >= k) {
            times.push(n as u64);
            rows.push(k - 1);
            k += 1;
        }
    }
    let status = if times.is_empty() {
        Status::UnresolvedUpTo(horizon)
    } else {
        Status::VerifiedUpTo(horizon)
    };
    Ok(Verdict::new("cor-c", status).with_witness(Witness::CorC { times, rows }))
}

/// Support-index criteria: the exact branch for iterates, the witness search otherwise.
pub fn support_criteria(ops: &OperatorSequence, horizon: u64) -> Result<Verdict> {
    match ops {
        OperatorSequence::Iterates(t) => cor_bes(t, horizon),
        OperatorSequence::Explicit(_) => cor_c(ops, horizon),
    }
}
