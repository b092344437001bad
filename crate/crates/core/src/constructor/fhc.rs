use crate::criteria::{column_block, frequent_schedule_criterion, max_support};
use crate::error::{Error, Result};
use crate::linalg::{solve_min_support, Vector};
use crate::operator::{ColumnFiniteOperator, OperatorSequence};
use crate::seq::{FiniteSeq, IndexDomain};
use crate::verdict::{Status, Witness};

use super::{density, write_block, Certificate, CertificateKind, Hit, Targets, Valuation, WindowCheck};

/// `d_k = sum_{n<k} r^n (c0 - 1)` for `k = 1..=h`, failing on overflow.
fn closed_starts(r: i64, c0: i64, h: u64) -> Result<Vec<i64>> {
    let overflow = || Error::InvalidArgument("schedule leaves the 64-bit index range; lower the horizon".into());
    let (mut acc, mut pow) = (0i64, 1i64);
    let mut out = Vec::with_capacity(h as usize);
    for _ in 0..h {
        acc = pow.checked_mul(c0 - 1).and_then(|v| v.checked_add(acc)).ok_or_else(overflow)?;
        pow = pow.checked_mul(r).ok_or_else(overflow)?;
        out.push(acc);
    }
    Ok(out)
}

/// Walks `E = union of E_{l,j} = A(l, j + N_l)` inside `[1, horizon]` and
/// appends, at each element `n` of `E_{l,j}`, the block `[d_n, f_{n,l})` to
/// every vector that has entries: the owner `u_j` is aimed at the stage-`l`
/// target, the others at a zero window.
///
/// The schedule `(d_k), (N_l)` comes from the schedule criterion, which must
/// not be refuted or unresolved.
pub fn fhc_prefix_certificate(t: &ColumnFiniteOperator, l_max: usize, j_max: usize, horizon: u64) -> Result<Certificate> {
    if t.domain() != IndexDomain::Unilateral {
        return Err(Error::BilateralUnsupported);
    }
    if l_max < 1 || j_max < 1 || horizon < 1 {
        return Err(Error::InvalidArgument("need L, J and horizon at least 1".into()));
    }
    let ops = OperatorSequence::Iterates(t.clone());
    let mut area = Vec::new();
    for n in 1..=horizon {
        if let Some((l, nu)) = density::owner(n) {
            area.push((n, l, nu));
        }
    }
    let verdict = frequent_schedule_criterion(&ops, l_max, horizon.min(area.last().map_or(1, |a| a.0)))?;
    if !matches!(verdict.status, Status::Holds | Status::VerifiedUpTo(_)) {
        return Err(Error::Precondition(format!("schedule criterion is {}", verdict.status)));
    }
    let Some(Witness::Schedule { r, c0, d, n: nl }) = verdict.witnesses.first() else {
        return Err(Error::Precondition("schedule criterion returned no schedule".into()));
    };
    let walk: Vec<(u64, usize, usize)> = area
        .into_iter()
        .filter_map(|(n, l, nu)| {
            let l = l as usize;
            let need = nl.get(l.checked_sub(1)?)?.1;
            let j = nu.checked_sub(need).filter(|j| (1..=j_max as u64).contains(j))?;
            (l <= l_max).then_some((n, l, j as usize))
        })
        .collect();

    let ys = Targets::Enumerated.resolve(l_max)?;
    let mut cert = Certificate::empty(CertificateKind::Fhc, ys.clone(), true);
    if walk.is_empty() {
        cert.warnings.push(format!("no element of E within [1, {horizon}]"));
        return Ok(cert);
    }
    let last_time = walk.last().unwrap().0;
    let starts = if *r > 0 {
        closed_starts(*r, *c0, last_time)?
    } else {
        d.iter().map(|(_, v)| *v).collect()
    };
    let start_at = |n: u64| -> Result<i64> {
        starts.get(n as usize - 1).copied().ok_or_else(|| Error::Precondition(format!("no schedule entry d_{n}")))
    };

    let mut us = vec![FiniteSeq::zero(IndexDomain::Unilateral); j_max];
    let mut power = t.clone();
    let mut power_n = 1u64;
    let mut prev_end: Option<(u64, i64)> = None;
    for &(n, l, j) in &walk {
        let lo = start_at(n)?;
        if let Some((time, end)) = prev_end {
            if end > lo {
                return Err(Error::ScheduleViolation { time, end, next_start: lo });
            }
        }
        while power_n < n {
            power = t.compose(&power)?;
            power_n += 1;
        }
        let hi = max_support(&power, l)?;
        let cols = column_block(&power, l, lo, hi.max(lo))?;
        let owner_target = ys[l - 1].window(0, l as i64);
        for (i, u) in us.iter_mut().enumerate() {
            let owner = i + 1 == j;
            if !owner && u.is_zero() {
                continue;
            }
            let current = power.apply_rows(u, 0, l as i64)?;
            let rhs: Vector = if owner {
                owner_target.iter().zip(&current).map(|(a, b)| a - b).collect()
            } else {
                current.iter().map(|b| -b.clone()).collect()
            };
            let sol = solve_min_support(&cols, &rhs)
                .ok_or_else(|| Error::Precondition(format!("span condition fails at time {n} for l = {l}")))?;
            write_block(u, lo, &sol)?;
        }
        for i in 0..j_max {
            let target = (i + 1 == j).then_some(l);
            cert.checks.push(WindowCheck { vector: i, time: n, rows: l, target });
        }
        cert.hits.push(Hit { vector: j - 1, l, time: n });
        prev_end = Some((n, hi));
    }
    for (i, u) in us.iter().enumerate() {
        match u.min_index() {
            Some(k) => cert.valuations.push(Valuation { vector: i, grade: k - 1 }),
            None => cert.warnings.push(format!("vector {} received no hit within the horizon", i + 1)),
        }
    }
    cert.vectors = us;
    Ok(cert)
}
