use crate::error::{Error, Result};
use crate::linalg::leftmost_pivots;
use crate::operator::{ColumnFiniteOperator, OperatorSequence};
use crate::verdict::{Status, Verdict, Witness};

use super::{column_block, max_support};

/// Powers compared against each other when looking for a cycle `T^a = T^b`.
const CYCLE_PROBE: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankParams {
    pub n: i64,
    pub l: usize,
    pub k: u64,
    pub horizon: u64,
}

/// Leftmost full-rank pivot set of rows `0..l` over columns `>= n`, if any.
fn full_rank_pivots(t: &ColumnFiniteOperator, n: i64, l: usize) -> Result<Option<Vec<i64>>> {
    let hi = max_support(t, l)?;
    if hi <= n {
        return Ok(None);
    }
    let cols = column_block(t, l, n, hi)?;
    let piv = leftmost_pivots(&cols, l);
    Ok((piv.len() == l).then(|| piv.into_iter().map(|j| j as i64 + n).collect()))
}

fn holds(k: u64, pivots: Vec<i64>) -> Verdict {
    let m = *pivots.last().expect("pivot set is nonempty");
    Verdict::new("rank", Status::Holds).with_witness(Witness::Rank { k, m, pivots })
}

/// Searches the smallest `k in [K, horizon]` for which rows `0..l` of `T_k`
/// restricted to columns `j >= N` have rank `l`, reporting the smallest `M`.
///
/// Refutation is exact when an explicit list is exhausted or when the
/// iterates of a single operator cycle.
pub fn rank_criterion(ops: &OperatorSequence, p: &RankParams) -> Result<Verdict> {
    if p.n < 0 || p.l < 1 || p.k < 1 {
        return Err(Error::InvalidArgument("rank criterion needs N >= 0, l >= 1, K >= 1".into()));
    }
    match ops {
        OperatorSequence::Explicit(list) => {
            for (idx, t) in list.iter().enumerate().skip(p.k as usize - 1) {
                let k = idx as u64 + 1;
                if k > p.horizon {
                    return Ok(Verdict::new("rank", Status::UnresolvedUpTo(p.horizon)));
                }
                if let Some(piv) = full_rank_pivots(t, p.n, p.l)? {
                    return Ok(holds(k, piv));
                }
            }
            Ok(Verdict::refuted(
                "rank",
                format!("no member T_k with k >= {} reaches rank {} on columns >= {}", p.k, p.l, p.n),
            ))
        }
        OperatorSequence::Iterates(t) => iterates(t, p),
    }
}

fn iterates(t: &ColumnFiniteOperator, p: &RankParams) -> Result<Verdict> {
    let mut powers: Vec<ColumnFiniteOperator> = Vec::new();
    let mut last: Option<ColumnFiniteOperator> = None;
    for k in 1..=p.horizon {
        let next = match &last {
            None => t.clone(),
            Some(prev) => t.compose(prev)?,
        };
        if powers.len() < CYCLE_PROBE {
            if let Some(a) = powers.iter().position(|q| *q == next) {
                return cycle(&powers, a as u64 + 1, k, p);
            }
            powers.push(next.clone());
        }
        if k >= p.k {
            if let Some(piv) = full_rank_pivots(&next, p.n, p.l)? {
                return Ok(holds(k, piv));
            }
        }
        last = Some(next);
    }
    Ok(Verdict::new("rank", Status::UnresolvedUpTo(p.horizon)))
}

/// `T^a = T^b`: every later power is one of `T^a..T^{b-1}`.
fn cycle(powers: &[ColumnFiniteOperator], a: u64, b: u64, p: &RankParams) -> Result<Verdict> {
    for j in a..b {
        if j >= p.k {
            continue;
        }
        if let Some(piv) = full_rank_pivots(&powers[j as usize - 1], p.n, p.l)? {
            // T^j = T^{j + t(b-a)} for the first such exponent >= K
            let period = b - a;
            let k = j + (p.k - j).div_ceil(period) * period;
            return Ok(holds(k, piv));
        }
    }
    Ok(Verdict::refuted(
        "rank",
        format!("iterates cycle with T^{a} = T^{b} and no power reaches rank {} on columns >= {}", p.l, p.n),
    )
    .note(format!("cycle detected at exponents {a} and {b}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{backward_shift, polynomial_of_shift};
    use crate::seq::IndexDomain;

    fn params(n: i64, l: usize, k: u64) -> RankParams {
        RankParams { n, l, k, horizon: 50 }
    }

    #[test]
    fn shift_reaches_rank_at_first_admissible_power() {
        let v = rank_criterion(&OperatorSequence::Iterates(backward_shift()), &params(5, 3, 1)).unwrap();
        assert_eq!(v.status, Status::Holds);
        assert_eq!(v.witnesses[0], Witness::Rank { k: 5, m: 7, pivots: vec![5, 6, 7] });
        let v = rank_criterion(&OperatorSequence::Iterates(backward_shift()), &params(0, 2, 9)).unwrap();
        assert_eq!(v.witnesses[0], Witness::Rank { k: 9, m: 10, pivots: vec![9, 10] });
    }

    #[test]
    fn zero_and_identity_refuted_by_cycle() {
        let z = ColumnFiniteOperator::zero(IndexDomain::Unilateral);
        assert_eq!(rank_criterion(&OperatorSequence::Iterates(z), &params(0, 1, 1)).unwrap().status, Status::Refuted);
        let id = ColumnFiniteOperator::identity(IndexDomain::Unilateral);
        let v = rank_criterion(&OperatorSequence::Iterates(id.clone()), &params(1, 1, 1)).unwrap();
        assert_eq!(v.status, Status::Refuted);
        // column 0 of row 0 is available for N = 0, through any power >= K
        let v = rank_criterion(&OperatorSequence::Iterates(id), &params(0, 1, 4)).unwrap();
        assert_eq!(v.witnesses[0], Witness::Rank { k: 4, m: 0, pivots: vec![0] });
    }

    #[test]
    fn short_horizon_is_unresolved() {
        let p = RankParams { n: 30, l: 1, k: 1, horizon: 10 };
        let v = rank_criterion(&OperatorSequence::Iterates(backward_shift()), &p).unwrap();
        assert_eq!(v.status, Status::UnresolvedUpTo(10));
    }

    #[test]
    fn explicit_list_exhausted() {
        let list = OperatorSequence::Explicit(vec![backward_shift(), polynomial_of_shift(&[0, 2, 1]).unwrap()]);
        assert_eq!(rank_criterion(&list, &params(10, 1, 1)).unwrap().status, Status::Refuted);
        assert_eq!(rank_criterion(&list, &params(2, 1, 1)).unwrap().witnesses[0], Witness::Rank { k: 2, m: 2, pivots: vec![2] });
    }

    #[test]
    fn bad_parameters() {
        let ops = OperatorSequence::Iterates(backward_shift());
        assert!(rank_criterion(&ops, &params(0, 0, 1)).is_err());
        assert!(rank_criterion(&ops, &params(0, 1, 0)).is_err());
    }
}
