use crate::error::{Error, Result};
use crate::linalg::IncrementalSpan;
use crate::operator::{ColumnFiniteOperator, OperatorSequence};
use crate::support::{closed_form_support, SupportProfile};
use crate::verdict::{Status, Verdict, Witness};

use super::{column_block, max_support};

const NAME: &str = "fhc-schedule";
/// Powers and row counts on which the symbolic schedule is cross-checked by exact ranks.
const CROSS_CHECK: u32 = 3;
/// Schedule entries listed in the witness.
const SHOWN: u64 = 10;

/// Schedule criterion for frequently hypercyclic subspaces.
///
/// With `c_{i+1} = c_i + r` and `c_0 >= 2` the schedule `d_k = c^{(k)}_0 - 1`,
/// `N_l = l` is exact: `f_{k,l} <= d_{k+l}` reduces to
/// `sum_{n=k}^{k+l-1} r^n (c_0 - 1) >= r^k (l - 1) + 1`, which holds since the
/// left side is at least `l r^k`, and `d_k` is increasing. Otherwise schedules
/// are searched for `k <= horizon`, `l <= l_max`.
pub fn frequent_schedule_criterion(ops: &OperatorSequence, l_max: usize, horizon: u64) -> Result<Verdict> {
    if l_max < 1 || horizon < 1 {
        return Err(Error::InvalidArgument("need l_max >= 1 and horizon >= 1".into()));
    }
    if let OperatorSequence::Iterates(t) = ops {
        if t.rule().is_some() {
            if let Some((r, c0)) = SupportProfile::of(t)?.increment() {
                return exact(t, r, c0, l_max, horizon);
            }
        }
    }
    search(ops, l_max, horizon)
}

fn exact(t: &ColumnFiniteOperator, r: i64, c0: i64, l_max: usize, horizon: u64) -> Result<Verdict> {
    if c0 == 0 {
        return Ok(Verdict::refuted(NAME, "row 0 is zero, so no span condition holds for l = 1")
            .with_witness(Witness::Increment { r, c0 }));
    }
    if c0 == 1 {
        return Ok(Verdict::refuted(
            NAME,
            "c_0 = 1 gives f_{k,1} = 1 for every k, forcing d_k = 0 < f_{k,1}",
        )
        .with_witness(Witness::Increment { r, c0 }));
    }
    let d = |k: u32| closed_form_support(r, c0, k, 0) - 1;
    let f = |k: u32, l: i64| closed_form_support(r, c0, k, l - 1);
    let mut power = t.clone();
    for k in 1..=CROSS_CHECK {
        if k > 1 {
            power = t.compose(&power)?;
        }
        for l in 1..=CROSS_CHECK as usize {
            let fk = max_support(&power, l)?;
            if fk != f(k, l as i64) {
                return Err(Error::Precondition(format!("support of T^{k} disagrees with the closed form")));
            }
            let cols = column_block(&power, l, d(k), fk)?;
            let mut span = IncrementalSpan::new(l);
            cols.iter().enumerate().for_each(|(j, c)| {
                span.insert(j, c);
            });
            if !span.is_full() {
                return Err(Error::Precondition(format!("span condition fails for k={k}, l={l}")));
            }
        }
    }
    let shown = horizon.min(SHOWN) as u32;
    Ok(Verdict::new(NAME, Status::Holds).with_witness(Witness::Schedule {
        r,
        c0,
        d: (1..=shown).map(|k| (k as u64, d(k))).collect(),
        n: (1..=l_max).map(|l| (l, l as u64)).collect(),
    }))
}

/// Largest `d` with rank `l` on columns `d..f` of rows `0..l`, if any.
fn largest_start(t: &ColumnFiniteOperator, l: usize, f: i64) -> Result<Option<i64>> {
    let cols = column_block(t, l, 0, f)?;
    let mut span = IncrementalSpan::new(l);
    for j in (0..f).rev() {
        span.insert(j as usize, &cols[j as usize]);
        if span.is_full() {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

fn search(ops: &OperatorSequence, l_max: usize, horizon: u64) -> Result<Verdict> {
    let members = ops.members(horizon)?;
    let h = members.len();
    let mut d = Vec::with_capacity(h);
    let mut f = vec![Vec::with_capacity(l_max); h];
    for (idx, t) in members.iter().enumerate() {
        let mut dk = i64::MAX;
        for l in 1..=l_max {
            let fk = max_support(t, l)?;
            f[idx].push(fk);
            match largest_start(t, l, fk)? {
                Some(s) => dk = dk.min(s),
                None => {
                    return Ok(Verdict::refuted(
                        NAME,
                        format!("rows 0..{l} of T_{} do not have rank {l}", idx + 1),
                    ))
                }
            }
        }
        d.push(dk);
    }
    let mut n = Vec::with_capacity(l_max);
    let mut resolved = true;
    for l in 1..=l_max {
        let mut need = 0usize;
        for (k, fk) in f.iter().enumerate() {
            if let Some(bad) = (k..h).rev().find(|&k2| fk[l - 1] > d[k2]) {
                need = need.max(bad - k + 1);
            }
        }
        if need >= h {
            resolved = false;
        }
        n.push((l, need as u64));
    }
    let status = if resolved && h > 0 {
        Status::VerifiedUpTo(horizon)
    } else {
        Status::UnresolvedUpTo(horizon)
    };
    Ok(Verdict::new(NAME, status).with_witness(Witness::Schedule {
        r: 0,
        c0: members.first().map_or(Ok(0), |t| t.support_index(0))?,
        d: d.iter().enumerate().map(|(k, v)| (k as u64 + 1, *v)).collect(),
        n,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{backward_shift, polynomial_of_shift, stride_shift};
    use crate::seq::IndexDomain;

    #[test]
    fn shift_schedule_is_exact() {
        let v = frequent_schedule_criterion(&OperatorSequence::Iterates(backward_shift()), 3, 5).unwrap();
        assert_eq!(v.status, Status::Holds);
        let Witness::Schedule { r, c0, d, n } = &v.witnesses[0] else { panic!() };
        assert_eq!((*r, *c0), (1, 2));
        assert_eq!(d, &vec![(1, 1), (2, 2), (3, 3), (4, 4), (5, 5)]);
        assert_eq!(n, &vec![(1, 1), (2, 2), (3, 3)]);
    }

    #[test]
    fn stride_two_schedule() {
        let t = stride_shift(IndexDomain::Unilateral, 2, 1).unwrap();
        let v = frequent_schedule_criterion(&OperatorSequence::Iterates(t), 2, 4).unwrap();
        assert_eq!(v.status, Status::Holds);
        let Witness::Schedule { d, .. } = &v.witnesses[0] else { panic!() };
        // d_k = 2^k - 1
        assert_eq!(d, &vec![(1, 1), (2, 3), (3, 7), (4, 15)]);
    }

    #[test]
    fn identity_and_zero_refuted() {
        let id = ColumnFiniteOperator::identity(IndexDomain::Unilateral);
        assert_eq!(frequent_schedule_criterion(&OperatorSequence::Iterates(id), 2, 5).unwrap().status, Status::Refuted);
        let z = ColumnFiniteOperator::zero(IndexDomain::Unilateral);
        assert_eq!(frequent_schedule_criterion(&OperatorSequence::Iterates(z), 2, 5).unwrap().status, Status::Refuted);
    }

    #[test]
    fn explicit_sequence_search() {
        let ops: Vec<_> = (1..=8).map(|k| backward_shift().iterate(k).unwrap()).collect();
        let v = frequent_schedule_criterion(&OperatorSequence::Explicit(ops), 2, 8).unwrap();
        assert_eq!(v.status, Status::VerifiedUpTo(8));
        let Witness::Schedule { d, n, .. } = &v.witnesses[0] else { panic!() };
        assert_eq!(d[0], (1, 1));
        assert_eq!(n, &vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn polynomial_of_shift_schedule() {
        // c_i = i + 3 with r = 1 is exact; P(B) = B^2 + 2B
        let t = polynomial_of_shift(&[0, 2, 1]).unwrap();
        assert_eq!(frequent_schedule_criterion(&OperatorSequence::Iterates(t), 2, 4).unwrap().status, Status::Holds);
    }
}
