//! Column-finite operators stored by rows.
//!
//! An operator is a finite block of explicit rows `0..E` followed by an
//! optional band rule. The rule uses a stride `s >= 1`: row `i >= E` is
//! `sum_d f_d(i) e_{s*i + d}` with quasi-polynomial coefficients `f_d`.
//! Ordinary bands are stride 1, and strided bands are closed under
//! composition. Bilateral operators are rule-only and cover every `i`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::quasipoly::QuasiPoly;
use crate::scalar::{int, lcm, Scalar};
use crate::seq::{FiniteSeq, IndexDomain};

#[derive(Debug, Clone)]
pub struct RowRule {
    pub stride: i64,
    /// Column offset `d` to coefficient `f_d`; zero coefficients are never stored.
    pub diagonals: BTreeMap<i64, QuasiPoly>,
}

impl RowRule {
    pub fn new(stride: i64, diagonals: BTreeMap<i64, QuasiPoly>) -> Self {
        let diagonals = diagonals.into_iter().filter(|(_, f)| !f.is_zero()).collect();
        RowRule { stride, diagonals }
    }

    pub fn single(stride: i64, offset: i64, f: QuasiPoly) -> Self {
        RowRule::new(stride, BTreeMap::from([(offset, f)]))
    }

    pub fn is_zero(&self) -> bool {
        self.diagonals.is_empty()
    }

    pub fn min_offset(&self) -> Option<i64> {
        self.diagonals.keys().next().copied()
    }

    pub fn max_offset(&self) -> Option<i64> {
        self.diagonals.keys().next_back().copied()
    }

    /// Least common period of the coefficients.
    pub fn period(&self) -> usize {
        self.diagonals.values().fold(1, |p, f| lcm(p, f.period()))
    }

    fn row(&self, i: i64) -> impl Iterator<Item = (i64, Scalar)> + '_ {
        self.diagonals.iter().map(move |(d, f)| (self.stride * i + d, f.eval(i)))
    }

    fn scaled(&self, c: &Scalar) -> RowRule {
        RowRule::new(self.stride, self.diagonals.iter().map(|(d, f)| (*d, f.scale(c))).collect())
    }
}

impl PartialEq for RowRule {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.stride == other.stride && self.diagonals == other.diagonals
    }
}

#[derive(Debug, Clone)]
pub struct ColumnFiniteOperator {
    domain: IndexDomain,
    explicit: Vec<FiniteSeq>,
    rule: Option<RowRule>,
}

impl ColumnFiniteOperator {
    pub fn new(domain: IndexDomain, explicit: Vec<FiniteSeq>, rule: Option<RowRule>) -> Result<Self> {
        if explicit.iter().any(|r| r.domain() != domain) {
            return Err(Error::DomainMismatch);
        }
        match (&rule, domain) {
            (Some(r), _) if r.stride < 1 => {
                return Err(Error::Schema("band stride must be at least 1".into()));
            }
            (None, IndexDomain::Bilateral) => {
                return Err(Error::Schema("bilateral operators need a band rule".into()));
            }
            (Some(_), IndexDomain::Bilateral) if !explicit.is_empty() => {
                return Err(Error::Schema("bilateral operators are given by their band rule alone".into()));
            }
            (Some(r), IndexDomain::Unilateral) => {
                if let Some(d) = r.min_offset() {
                    if r.stride * explicit.len() as i64 + d < 0 {
                        return Err(Error::Schema(format!(
                            "band offset {d} reaches a negative column from row {}",
                            explicit.len()
                        )));
                    }
                }
            }
            _ => {}
        }
        Ok(ColumnFiniteOperator { domain, explicit, rule })
    }

    pub fn banded(domain: IndexDomain, rule: RowRule) -> Result<Self> {
        Self::new(domain, Vec::new(), Some(rule))
    }

    pub fn identity(domain: IndexDomain) -> Self {
        Self::banded(domain, RowRule::single(1, 0, QuasiPoly::constant(int(1)))).expect("identity is valid")
    }

    pub fn zero(domain: IndexDomain) -> Self {
        Self::banded(domain, RowRule::new(1, BTreeMap::new())).expect("zero is valid")
    }

    pub fn domain(&self) -> IndexDomain {
        self.domain
    }

    pub fn rule(&self) -> Option<&RowRule> {
        self.rule.as_ref()
    }

    pub fn explicit_rows(&self) -> &[FiniteSeq] {
        &self.explicit
    }

    /// First row produced by the band rule.
    pub fn rule_start(&self) -> i64 {
        self.explicit.len() as i64
    }

    /// Rows `0..n` are available; `None` means every row is.
    pub fn available_rows(&self) -> Option<i64> {
        match self.rule {
            Some(_) => None,
            None => Some(self.explicit.len() as i64),
        }
    }

    pub fn row(&self, i: i64) -> Result<FiniteSeq> {
        if !self.domain.admits(i) {
            return Err(Error::RowUnavailable { row: i });
        }
        if self.domain == IndexDomain::Unilateral && i < self.rule_start() {
            return Ok(self.explicit[i as usize].clone());
        }
        match &self.rule {
            Some(r) => FiniteSeq::from_entries(self.domain, r.row(i)),
            None => Err(Error::RowUnavailable { row: i }),
        }
    }

    pub fn entry(&self, i: i64, j: i64) -> Result<Scalar> {
        Ok(self.row(i)?.get(j))
    }

    /// Smallest `c` with `a_{i,j} = 0` for all `j >= c`; zero rows give 0.
    pub fn support_index(&self, i: i64) -> Result<i64> {
        if self.domain == IndexDomain::Bilateral {
            return Err(Error::BilateralUnsupported);
        }
        Ok(self.row(i)?.max_index().map_or(0, |m| m + 1))
    }

    pub fn apply(&self, x: &FiniteSeq) -> Result<FiniteSeq> {
        if x.domain() != self.domain {
            return Err(Error::DomainMismatch);
        }
        let Some(rule) = &self.rule else {
            return Err(Error::UnboundedResult);
        };
        let mut out = BTreeMap::<i64, Scalar>::new();
        for (i, row) in self.explicit.iter().enumerate() {
            let v = dot(row, x);
            if !v.is_zero() {
                out.insert(i as i64, v);
            }
        }
        let start = match self.domain {
            IndexDomain::Unilateral => Some(self.rule_start()),
            IndexDomain::Bilateral => None,
        };
        for (j, v) in x.iter() {
            for (d, f) in &rule.diagonals {
                let t = j - d;
                if t.rem_euclid(rule.stride) != 0 {
                    continue;
                }
                let i = t.div_euclid(rule.stride);
                if start.is_some_and(|s| i < s) {
                    continue;
                }
                *out.entry(i).or_insert_with(Scalar::zero) += f.eval(i) * v;
            }
        }
        FiniteSeq::from_entries(self.domain, out)
    }

    /// Coordinates `lo..hi` of `Tx`.
    pub fn apply_rows(&self, x: &FiniteSeq, lo: i64, hi: i64) -> Result<Vec<Scalar>> {
        if x.domain() != self.domain {
            return Err(Error::DomainMismatch);
        }
        (lo..hi).map(|i| Ok(dot(&self.row(i)?, x))).collect()
    }

    /// The first `l` coordinates of `Tx`.
    pub fn apply_window(&self, x: &FiniteSeq, l: i64) -> Result<Vec<Scalar>> {
        if l < 1 {
            return Err(Error::InvalidArgument("window length must be at least 1".into()));
        }
        self.apply_rows(x, 0, l)
    }

    /// `r * S` for a row vector `r`: the corresponding row of a product.
    fn row_times(row: &FiniteSeq, s: &ColumnFiniteOperator) -> Result<FiniteSeq> {
        let mut acc = FiniteSeq::zero(s.domain);
        for (j, v) in row.iter() {
            acc = acc.plus(&s.row(j)?.scaled(v))?;
        }
        Ok(acc)
    }

    /// `self ∘ other`, applying `other` first.
    pub fn compose(&self, other: &ColumnFiniteOperator) -> Result<ColumnFiniteOperator> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        let (Some(t), Some(s)) = (&self.rule, &other.rule) else {
            return Err(Error::NonbandedCompose(
                "both factors need a band rule; use compose_truncated".into(),
            ));
        };
        let mut diagonals = BTreeMap::<i64, QuasiPoly>::new();
        for (d, f) in &t.diagonals {
            for (e, g) in &s.diagonals {
                let term = f.mul(&g.compose_affine(t.stride, *d));
                let off = s.stride * d + e;
                let acc = diagonals.remove(&off).map_or(term.clone(), |a| a.add(&term));
                diagonals.insert(off, acc);
            }
        }
        let rule = RowRule::new(t.stride * s.stride, diagonals);
        if self.domain == IndexDomain::Bilateral {
            return Self::banded(self.domain, rule);
        }
        let mut start = self.rule_start();
        if let Some(dmin) = t.min_offset() {
            let need = other.rule_start() - dmin;
            start = start.max(need.div_euclid(t.stride) + i64::from(need.rem_euclid(t.stride) != 0));
        }
        let explicit = (0..start)
            .map(|i| Self::row_times(&self.row(i)?, other))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.domain, explicit, Some(rule))
    }

    /// Explicit rows `0..rows` of `self ∘ other`, without a band rule.
    pub fn compose_truncated(&self, other: &ColumnFiniteOperator, rows: i64) -> Result<ColumnFiniteOperator> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        if self.domain == IndexDomain::Bilateral {
            return Err(Error::BilateralUnsupported);
        }
        let explicit = (0..rows)
            .map(|i| Self::row_times(&self.row(i)?, other))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.domain, explicit, None)
    }

    /// Explicit rows `0..rows` only.
    pub fn truncated(&self, rows: i64) -> Result<ColumnFiniteOperator> {
        if self.domain == IndexDomain::Bilateral {
            return Err(Error::BilateralUnsupported);
        }
        let explicit = (0..rows).map(|i| self.row(i)).collect::<Result<Vec<_>>>()?;
        Self::new(self.domain, explicit, None)
    }

    pub fn add(&self, other: &ColumnFiniteOperator) -> Result<ColumnFiniteOperator> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        let rule = match (&self.rule, &other.rule) {
            (Some(a), Some(b)) => {
                let stride = match (a.is_zero(), b.is_zero()) {
                    (true, _) => b.stride,
                    (_, true) => a.stride,
                    _ if a.stride == b.stride => a.stride,
                    _ => {
                        return Err(Error::NonbandedCompose(format!(
                            "band strides {} and {} differ",
                            a.stride, b.stride
                        )))
                    }
                };
                let mut diagonals = a.diagonals.clone();
                for (d, g) in &b.diagonals {
                    let acc = diagonals.remove(d).map_or(g.clone(), |f| f.add(g));
                    diagonals.insert(*d, acc);
                }
                Some(RowRule::new(stride, diagonals))
            }
            _ => None,
        };
        let rows = match (self.available_rows(), other.available_rows()) {
            (None, None) => self.rule_start().max(other.rule_start()),
            (a, b) => a.unwrap_or(i64::MAX).min(b.unwrap_or(i64::MAX)),
        };
        if self.domain == IndexDomain::Bilateral {
            return Self::new(self.domain, Vec::new(), rule);
        }
        let explicit = (0..rows)
            .map(|i| self.row(i)?.plus(&other.row(i)?))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.domain, explicit, rule)
    }

    pub fn scale(&self, c: &Scalar) -> ColumnFiniteOperator {
        ColumnFiniteOperator {
            domain: self.domain,
            explicit: self.explicit.iter().map(|r| r.scaled(c)).collect(),
            rule: self.rule.as_ref().map(|r| r.scaled(c)),
        }
    }

    /// `T^k`, with `T^0` the identity.
    pub fn iterate(&self, k: u32) -> Result<ColumnFiniteOperator> {
        let mut acc = Self::identity(self.domain);
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Largest column offset `j - stride*i` that a rule row reaches.
    pub fn band_reach(&self) -> i64 {
        self.rule.as_ref().and_then(RowRule::max_offset).unwrap_or(0).max(0)
    }
}

fn dot(row: &FiniteSeq, x: &FiniteSeq) -> Scalar {
    let (small, big) = if row.nnz() <= x.nnz() { (row, x) } else { (x, row) };
    small.iter().fold(Scalar::zero(), |acc, (k, v)| acc + v * big.get(k))
}

impl PartialEq for ColumnFiniteOperator {
    fn eq(&self, other: &Self) -> bool {
        if self.domain != other.domain {
            return false;
        }
        match (&self.rule, &other.rule) {
            (None, None) => self.explicit == other.explicit,
            (Some(a), Some(b)) => {
                if a != b {
                    return false;
                }
                let e = self.rule_start().max(other.rule_start());
                (0..e).all(|i| self.row(i).ok() == other.row(i).ok())
            }
            _ => false,
        }
    }
}

/// A sequence `(T_k)_{k>=1}` of operators.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorSequence {
    Iterates(ColumnFiniteOperator),
    Explicit(Vec<ColumnFiniteOperator>),
}

impl OperatorSequence {
    pub fn domain(&self) -> IndexDomain {
        match self {
            OperatorSequence::Iterates(t) => t.domain(),
            OperatorSequence::Explicit(v) => v.first().map_or(IndexDomain::Unilateral, |t| t.domain()),
        }
    }

    /// Number of members, `None` for an infinite sequence of iterates.
    pub fn len(&self) -> Option<u64> {
        match self {
            OperatorSequence::Iterates(_) => None,
            OperatorSequence::Explicit(v) => Some(v.len() as u64),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// Members `T_1..T_upto` (fewer for an exhausted explicit list).
    pub fn members(&self, upto: u64) -> Result<Vec<ColumnFiniteOperator>> {
        match self {
            OperatorSequence::Explicit(v) => Ok(v.iter().take(upto as usize).cloned().collect()),
            OperatorSequence::Iterates(t) => {
                let mut out: Vec<ColumnFiniteOperator> = Vec::with_capacity(upto as usize);
                for _ in 0..upto {
                    let next = match out.last() {
                        Some(p) => t.compose(p)?,
                        None => t.clone(),
                    };
                    out.push(next);
                }
                Ok(out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn uni(k: i64) -> FiniteSeq {
        FiniteSeq::unit(IndexDomain::Unilateral, k).unwrap()
    }

    fn shift() -> ColumnFiniteOperator {
        ColumnFiniteOperator::banded(IndexDomain::Unilateral, RowRule::single(1, 1, QuasiPoly::constant(int(1)))).unwrap()
    }

    #[test]
    fn backward_shift_action() {
        assert_eq!(shift().apply(&uni(5)).unwrap(), uni(4));
        assert!(shift().apply(&uni(0)).unwrap().is_zero());
    }

    #[test]
    fn iterates_of_shift() {
        let b3 = shift().iterate(3).unwrap();
        assert_eq!(b3.row(0).unwrap(), uni(3));
        assert_eq!(shift().iterate(1).unwrap(), shift());
        assert_eq!(ColumnFiniteOperator::identity(IndexDomain::Unilateral).compose(&shift()).unwrap(), shift());
    }

    #[test]
    fn window_of_b_squared() {
        let b2 = shift().iterate(2).unwrap();
        assert_eq!(b2.apply_window(&uni(7), 3).unwrap(), vec![int(0); 3]);
        assert_eq!(b2.apply_window(&uni(7), 6).unwrap()[5], int(1));
        let z = ColumnFiniteOperator::zero(IndexDomain::Unilateral);
        assert_eq!(z.apply_window(&uni(2), 4).unwrap(), vec![int(0); 4]);
        assert!(z.apply_window(&uni(2), 0).is_err());
    }

    #[test]
    fn bilateral_scaled_shift() {
        let t = ColumnFiniteOperator::banded(IndexDomain::Bilateral, RowRule::single(1, 1, QuasiPoly::constant(int(2)))).unwrap();
        let e0 = FiniteSeq::unit(IndexDomain::Bilateral, 0).unwrap();
        assert_eq!(t.apply_rows(&e0, -1, 0).unwrap(), vec![int(2)]);
        assert_eq!(t.apply(&e0).unwrap().get(-1), int(2));
    }

    #[test]
    fn support_indices() {
        assert_eq!(ColumnFiniteOperator::identity(IndexDomain::Unilateral).support_index(4).unwrap(), 5);
        assert_eq!(shift().support_index(4).unwrap(), 6);
        assert_eq!(ColumnFiniteOperator::zero(IndexDomain::Unilateral).support_index(3).unwrap(), 0);
    }

    #[test]
    fn explicit_only_operator() {
        let t = ColumnFiniteOperator::new(IndexDomain::Unilateral, vec![uni(1), uni(2)], None).unwrap();
        assert_eq!(t.row(2), Err(Error::RowUnavailable { row: 2 }));
        assert_eq!(t.apply(&uni(1)), Err(Error::UnboundedResult));
        assert!(matches!(t.compose(&t), Err(Error::NonbandedCompose(_))));
        assert_eq!(shift().compose_truncated(&t, 1).unwrap().row(0).unwrap(), uni(2));
    }

    #[test]
    fn negative_column_rule_rejected() {
        let r = RowRule::single(1, -1, QuasiPoly::constant(int(1)));
        assert!(ColumnFiniteOperator::new(IndexDomain::Unilateral, vec![], Some(r.clone())).is_err());
        assert!(ColumnFiniteOperator::new(IndexDomain::Unilateral, vec![FiniteSeq::zero(IndexDomain::Unilateral)], Some(r)).is_ok());
    }

    #[test]
    fn add_mismatched_strides() {
        let s2 = ColumnFiniteOperator::banded(IndexDomain::Unilateral, RowRule::single(2, 1, QuasiPoly::constant(int(1)))).unwrap();
        assert!(matches!(s2.add(&shift()), Err(Error::NonbandedCompose(_))));
        assert_eq!(s2.add(&ColumnFiniteOperator::zero(IndexDomain::Unilateral)).unwrap(), s2);
        assert_eq!(shift().scale(&ratio(1, 2)).scale(&int(2)), shift());
    }
}
