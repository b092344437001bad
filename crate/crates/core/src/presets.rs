//! Shift operators and polynomial combinations of them.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::operator::{ColumnFiniteOperator, RowRule};
use crate::quasipoly::QuasiPoly;
use crate::scalar::{int, Scalar};
use crate::seq::{FiniteSeq, IndexDomain};

/// Weights `w_n`: `prefix[n - 1]` for `1 <= n <= prefix.len()`, then `tail(n)`.
/// On the bilateral domain the prefix must be empty and `tail` covers all `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Weights {
    pub prefix: Vec<Scalar>,
    pub tail: QuasiPoly,
}

impl Weights {
    pub fn constant(c: Scalar) -> Self {
        Weights { prefix: Vec::new(), tail: QuasiPoly::constant(c) }
    }

    pub fn get(&self, n: i64) -> Scalar {
        if n >= 1 && (n as usize) <= self.prefix.len() {
            self.prefix[n as usize - 1].clone()
        } else {
            self.tail.eval(n)
        }
    }

    /// First index `n >= from` (or any `n` when `from` is `None`) with `w_n = 0`.
    pub fn first_zero(&self, from: Option<i64>) -> Option<i64> {
        let lo = from.unwrap_or(i64::MIN);
        if let Some(k) = self.prefix.iter().position(|w| w == &int(0)) {
            if k as i64 + 1 >= lo {
                return Some(k as i64 + 1);
            }
        }
        let start = (self.prefix.len() as i64 + 1).max(lo);
        let p = self.tail.period() as i64;
        let mut best: Option<i64> = None;
        for rho in 0..p {
            let bound = match self.tail.root_bound(rho as usize) {
                // identically zero on this residue
                None => {
                    let first = match from {
                        Some(_) => start + (rho - start).rem_euclid(p),
                        None => rho,
                    };
                    best = Some(best.map_or(first, |b| b.min(first)));
                    continue;
                }
                Some(b) => b.ceil().to_integer().to_i64().unwrap_or(i64::MAX / 4),
            };
            let from_i = if from.is_some() { start } else { -bound - p };
            let mut i = from_i + (rho - from_i).rem_euclid(p);
            while i <= bound {
                if self.tail.eval(i) == int(0) {
                    best = Some(best.map_or(i, |b| b.min(i)));
                    break;
                }
                i += p;
            }
        }
        best
    }
}

fn check_weights(domain: IndexDomain, w: &Weights) -> Result<()> {
    if domain == IndexDomain::Bilateral && !w.prefix.is_empty() {
        return Err(Error::Schema("bilateral weights are given by a rule alone".into()));
    }
    let from = match domain {
        IndexDomain::Unilateral => Some(1),
        IndexDomain::Bilateral => None,
    };
    match w.first_zero(from) {
        Some(index) => Err(Error::ZeroWeight { index }),
        None => Ok(()),
    }
}

/// `B_w e_n = w_n e_{n-1}` with `e_{-1} = 0` on the unilateral domain.
pub fn weighted_backward_shift(domain: IndexDomain, w: &Weights) -> Result<ColumnFiniteOperator> {
    check_weights(domain, w)?;
    let explicit = w
        .prefix
        .iter()
        .enumerate()
        .map(|(i, v)| FiniteSeq::from_entries(domain, [(i as i64 + 1, v.clone())]))
        .collect::<Result<Vec<_>>>()?;
    let rule = RowRule::single(1, 1, w.tail.compose_affine(1, 1));
    ColumnFiniteOperator::new(domain, explicit, Some(rule))
}

/// `S_w e_n = w_{n+1} e_{n+1}`, so `(S_w x)_i = w_i x_{i-1}`.
pub fn weighted_forward_shift(domain: IndexDomain, w: &Weights) -> Result<ColumnFiniteOperator> {
    check_weights(domain, w)?;
    let rule = RowRule::single(1, -1, w.tail.clone());
    if domain == IndexDomain::Bilateral {
        return ColumnFiniteOperator::banded(domain, rule);
    }
    let mut explicit = vec![FiniteSeq::zero(domain)];
    for (i, v) in w.prefix.iter().enumerate() {
        explicit.push(FiniteSeq::from_entries(domain, [(i as i64, v.clone())])?);
    }
    ColumnFiniteOperator::new(domain, explicit, Some(rule))
}

/// `P(B_w) + sum_k alpha_k S_w^k` with `P` given by coefficients in increasing degree.
pub fn polynomial_shift_mix(
    domain: IndexDomain,
    p: &[Scalar],
    alpha: &[Scalar],
    w: &Weights,
) -> Result<ColumnFiniteOperator> {
    let b = weighted_backward_shift(domain, w)?;
    let mut acc = ColumnFiniteOperator::zero(domain);
    let mut power = ColumnFiniteOperator::identity(domain);
    for (k, a) in p.iter().enumerate() {
        if k > 0 {
            power = b.compose(&power)?;
        }
        acc = acc.add(&power.scale(a))?;
    }
    if !alpha.is_empty() {
        let s = weighted_forward_shift(domain, w)?;
        let mut power = ColumnFiniteOperator::identity(domain);
        for a in alpha {
            power = s.compose(&power)?;
            acc = acc.add(&power.scale(a))?;
        }
    }
    Ok(acc)
}

/// Row `i` is `e_{stride*i + offset}`.
pub fn stride_shift(domain: IndexDomain, stride: i64, offset: i64) -> Result<ColumnFiniteOperator> {
    ColumnFiniteOperator::banded(domain, RowRule::single(stride, offset, QuasiPoly::constant(int(1))))
}

/// The unweighted backward shift.
pub fn backward_shift() -> ColumnFiniteOperator {
    weighted_backward_shift(IndexDomain::Unilateral, &Weights::constant(int(1))).expect("valid preset")
}

/// `P(B)` for the unweighted backward shift.
pub fn polynomial_of_shift(p: &[i64]) -> Result<ColumnFiniteOperator> {
    let p: Vec<Scalar> = p.iter().map(|c| int(*c)).collect();
    polynomial_shift_mix(IndexDomain::Unilateral, &p, &[], &Weights::constant(int(1)))
}

/// A diagonal band with an explicit coefficient map, for tests and configs.
pub fn band(domain: IndexDomain, stride: i64, diagonals: BTreeMap<i64, QuasiPoly>) -> Result<ColumnFiniteOperator> {
    ColumnFiniteOperator::banded(domain, RowRule::new(stride, diagonals))
}
