use std::collections::BTreeSet;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::operator::ColumnFiniteOperator;
use crate::scalar::{fmt_scalar, lcm, ratio, Scalar};
use crate::seminorm::{GradedSeminormFamily, SeminormKind, Tail, WeightRow};
use crate::seq::{FiniteSeq, IndexDomain};
use crate::verdict::{Status, Verdict, Witness};

/// A claimed bound `q(T^m x) >= C p_n(x)` on `E_n = {x : x_k = 0 for k in F_n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoSubspaceWitness {
    pub n: i64,
    pub annihilated: BTreeSet<i64>,
    pub constant: Scalar,
    pub iterate: u32,
}

fn periodic_tail(t: &Tail) -> Option<usize> {
    match t {
        Tail::Zero | Tail::Constant(_) => Some(1),
        Tail::Periodic(p) => Some(p.len()),
        Tail::Affine { slope, .. } if slope == &Scalar::from_integer(0.into()) => Some(1),
        _ => None,
    }
}

/// Row boundaries and the tail period, if every tail of `row` is periodic.
fn row_shape(row: &WeightRow) -> (Vec<i64>, Option<usize>) {
    let mut bounds = vec![row.tail_start];
    bounds.extend(row.explicit.keys().next().copied());
    bounds.extend(row.explicit.keys().next_back().copied());
    let mut period = periodic_tail(&row.tail);
    if let Some(l) = &row.left {
        bounds.push(l.start);
        period = match (period, periodic_tail(&l.tail)) {
            (Some(a), Some(b)) => Some(lcm(a, b)),
            _ => None,
        };
    }
    (bounds, period)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let p = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    ratio(p, rng.gen_range(1..=9))
}

/// Verifies each witness on basis vectors over a computed range and on seeded
/// samples from `E_n`.
///
/// The verdict is `HOLDS` when the basis range is exhaustive, every row of
/// `T^m` has at most one nonzero entry and the seminorm kinds are compatible:
/// then `T^m x` is a sum of disjointly supported images `x_k T^m e_k`, and the
/// basis inequalities add up (l1 target) or take maxima (sup on both sides).
pub fn no_subspace_witness_verify(
    t: &ColumnFiniteOperator,
    space: &GradedSeminormFamily,
    target: &GradedSeminormFamily,
    q_row: i64,
    witnesses: &[NoSubspaceWitness],
    samples: usize,
    seed: u64,
) -> Result<Verdict> {
    const NAME: &str = "no-subspace";
    if space.domain != t.domain() || target.domain != t.domain() {
        return Err(Error::DomainMismatch);
    }
    if witnesses.is_empty() {
        return Err(Error::MalformedWitness("no witnesses given".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kinds_ok = !matches!(
        (target.kind, space.kind),
        (SeminormKind::WeightedSup, SeminormKind::WeightedL1)
    );
    let mut out = Vec::new();
    let mut all_exact = true;
    let mut min_hi = i64::MAX;
    for w in witnesses {
        if w.constant <= Scalar::one() {
            return Err(Error::MalformedWitness(format!("C_{} = {} must exceed 1", w.n, fmt_scalar(&w.constant))));
        }
        if w.iterate < 1 {
            return Err(Error::MalformedWitness(format!("iterate for n = {} must be at least 1", w.n)));
        }
        if w.annihilated.iter().any(|k| !t.domain().admits(*k)) {
            return Err(Error::MalformedWitness("annihilated index outside the domain".into()));
        }
        let tm = t.iterate(w.iterate)?;
        let rule = tm
            .rule()
            .ok_or_else(|| Error::TailRuleRequired("the verifier needs a band rule".into()))?;
        let (s, dmin, dmax) = (rule.stride, rule.min_offset().unwrap_or(0), rule.max_offset().unwrap_or(0));

        let (q_weights, p_weights) = (target.row(q_row)?, space.row(w.n)?);
        let (qb, qp) = row_shape(&q_weights);
        let (pb, pp) = row_shape(&p_weights);
        let coeff_periodic = rule.diagonals.values().all(|f| f.is_periodic());
        let exhaustive = coeff_periodic && qp.is_some() && pp.is_some();
        let period = s * lcm(lcm(rule.period(), qp.unwrap_or(1)), pp.unwrap_or(1)) as i64;

        let mut cols: Vec<i64> = qb.iter().flat_map(|b| [s * b + dmin, s * b + dmax]).collect();
        cols.extend(pb);
        cols.extend(w.annihilated.iter().copied());
        if t.domain() == IndexDomain::Unilateral {
            cols.push(s * tm.rule_start() + dmax);
        }
        let margin = 2 * period + (dmax - dmin) + 1;
        let mut lo = cols.iter().min().copied().unwrap_or(0) - margin;
        let hi = cols.iter().max().copied().unwrap_or(0) + margin;
        if t.domain() == IndexDomain::Unilateral {
            lo = lo.max(0);
        }

        let check = |x: &FiniteSeq| -> Result<bool> {
            let lhs = target.eval(q_row, &tm.apply(x)?)?;
            Ok(lhs >= &w.constant * space.eval(w.n, x)?)
        };
        for k in lo..=hi {
            if w.annihilated.contains(&k) {
                continue;
            }
            if !check(&FiniteSeq::unit(t.domain(), k)?)? {
                return Ok(Verdict::refuted(NAME, format!("n = {}: basis vector e_{k} violates the bound", w.n))
                    .with_witness(Witness::Counterexample { detail: format!("e_{k}") }));
            }
        }
        let free: Vec<i64> = (lo..=hi).filter(|k| !w.annihilated.contains(k)).collect();
        for _ in 0..samples {
            let size = rng.gen_range(1..=4usize).min(free.len());
            let mut x = FiniteSeq::zero(t.domain());
            for _ in 0..size {
                let k = free[rng.gen_range(0..free.len())];
                x.set(k, random_rational(&mut rng))?;
            }
            if !check(&x)? {
                return Ok(Verdict::refuted(NAME, format!("n = {}: sampled vector violates the bound", w.n))
                    .with_witness(Witness::Counterexample { detail: x.to_pairs().join(" ") }));
            }
        }
        let single = tm.explicit_rows().iter().all(|r| r.nnz() <= 1) && rule.diagonals.len() <= 1;
        all_exact &= exhaustive && single && kinds_ok;
        min_hi = min_hi.min(hi);
        out.push(Witness::NoSubspace {
            n: w.n,
            iterate: w.iterate as u64,
            constant: fmt_scalar(&w.constant),
            basis_lo: lo,
            basis_hi: hi,
            samples,
            exhaustive,
        });
    }
    let status = if all_exact { Status::Holds } else { Status::VerifiedUpTo(min_hi.max(0) as u64) };
    let mut v = Verdict::new(NAME, status);
    v.witnesses = out;
    Ok(v.note(format!("sample seed {seed}")))
}
