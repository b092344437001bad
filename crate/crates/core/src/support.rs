//! Support indices of band operators and of their iterates.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::operator::ColumnFiniteOperator;
use crate::seq::IndexDomain;

/// Exact description of `i -> c_i` for a unilateral band operator.
///
/// Past `threshold`, row `i` has `c_i = stride*i + D + 1` where `D` is the top
/// nonvanishing offset for the residue of `i` modulo `period`, or `c_i = 0`
/// when every coefficient vanishes on that residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportProfile {
    pub stride: i64,
    pub period: usize,
    pub threshold: i64,
    pub prefix: Vec<i64>,
    pub top: Vec<Option<i64>>,
}

fn first_from(from: i64, rho: i64, p: i64) -> i64 {
    from + (rho - from).rem_euclid(p)
}

impl SupportProfile {
    pub fn of(t: &ColumnFiniteOperator) -> Result<SupportProfile> {
        if t.domain() != IndexDomain::Unilateral {
            return Err(Error::BilateralUnsupported);
        }
        let rule = t
            .rule()
            .ok_or_else(|| Error::TailRuleRequired("operator has no band rule".into()))?;
        let period = rule.period();
        let mut threshold = t.rule_start();
        let mut top = Vec::with_capacity(period);
        for rho in 0..period {
            let mut found = None;
            for (d, f) in rule.diagonals.iter().rev() {
                if let Some(b) = f.root_bound(rho) {
                    let b = b.floor().to_integer().to_i64().unwrap_or(i64::MAX / 4);
                    threshold = threshold.max(b + 1);
                    found = Some(*d);
                    break;
                }
            }
            top.push(found);
        }
        let prefix = (0..threshold).map(|i| t.support_index(i)).collect::<Result<Vec<_>>>()?;
        Ok(SupportProfile { stride: rule.stride, period, threshold, prefix, top })
    }

    pub fn c(&self, i: i64) -> i64 {
        if i < self.threshold {
            return self.prefix[i as usize];
        }
        self.top[i.rem_euclid(self.period as i64) as usize].map_or(0, |d| self.stride * i + d + 1)
    }

    /// First row with `c_i <= i + 1`, if any.
    pub fn first_not_exceeding(&self) -> Option<i64> {
        let mut bad = (0..self.threshold).find(|&i| self.c(i) <= i + 1);
        let p = self.period as i64;
        for rho in 0..p {
            let i0 = first_from(self.threshold, rho, p);
            // c_i - i - 1 = (s-1) i + D is nondecreasing in i
            if self.c(i0) <= i0 + 1 {
                bad = Some(bad.map_or(i0, |b| b.min(i0)));
            }
        }
        bad
    }

    /// A pair `i < i'` with `c_i = c_i'`, if any.
    pub fn collision(&self) -> Option<(i64, i64)> {
        let mut seen = HashMap::new();
        for i in 0..self.threshold {
            if let Some(&j) = seen.get(&self.c(i)) {
                return Some((j, i));
            }
            seen.insert(self.c(i), i);
        }
        let (s, p, r) = (self.stride, self.period as i64, self.threshold);
        let mut best: Option<(i64, i64)> = None;
        let mut take = |a: i64, b: i64| {
            let pair = (a.min(b), a.max(b));
            if best.is_none_or(|q| pair < q) {
                best = Some(pair);
            }
        };
        for rho in 0..p {
            let i0 = first_from(r, rho, p);
            match self.top[rho as usize] {
                None => match seen.get(&0) {
                    Some(&j) => take(j, i0),
                    None => take(i0, i0 + p),
                },
                Some(d) => {
                    for (&v, &j) in &seen {
                        let t = v - d - 1;
                        if t.rem_euclid(s) == 0 {
                            let i = t.div_euclid(s);
                            if i >= r && i.rem_euclid(p) == rho {
                                take(j, i);
                            }
                        }
                    }
                }
            }
        }
        for rho in 0..p {
            for rho2 in (rho + 1)..p {
                let (Some(d1), Some(d2)) = (self.top[rho as usize], self.top[rho2 as usize]) else {
                    continue;
                };
                // s*i + d1 = s*i2 + d2 with i = rho, i2 = rho2 (mod p)
                let diff = d2 - d1;
                if diff.rem_euclid(s) != 0 {
                    continue;
                }
                let delta = diff.div_euclid(s);
                if (rho2 + delta - rho).rem_euclid(p) != 0 {
                    continue;
                }
                let i2 = first_from(r.max(r - delta), rho2, p);
                take(i2 + delta, i2);
            }
        }
        best
    }

    /// `(r, c_0)` when `c_{i+1} = c_i + r` for every `i >= 0`.
    pub fn increment(&self) -> Option<(i64, i64)> {
        let d = self.top.first().copied().flatten()?;
        if self.top.iter().any(|t| *t != Some(d)) {
            return None;
        }
        let s = self.stride;
        if (0..self.threshold).any(|i| self.c(i + 1) - self.c(i) != s) {
            return None;
        }
        Some((s, self.c(0)))
    }
}

/// `c^{(k)}_i` by the recursion `c^{(k)}_i = c^{(k-1)}_{c_i - 1}`, memoized on `(k, i)`.
pub struct SupportRecursion<'a> {
    op: &'a ColumnFiniteOperator,
    profile: Option<SupportProfile>,
    memo: HashMap<(u64, i64), i64>,
}

impl<'a> SupportRecursion<'a> {
    pub fn new(op: &'a ColumnFiniteOperator) -> Result<Self> {
        if op.domain() != IndexDomain::Unilateral {
            return Err(Error::BilateralUnsupported);
        }
        let profile = op.rule().map(|_| SupportProfile::of(op)).transpose()?;
        Ok(SupportRecursion { op, profile, memo: HashMap::new() })
    }

    fn base(&self, k: u64, i: i64) -> Result<i64> {
        match &self.profile {
            Some(p) => Ok(p.c(i)),
            None => self.op.support_index(i).map_err(|e| match e {
                Error::RowUnavailable { .. } => Error::RecursionEscape { k, i },
                other => other,
            }),
        }
    }

    pub fn get(&mut self, k: u64, i: i64) -> Result<i64> {
        if k < 1 {
            return Err(Error::InvalidArgument("iterate_support needs k >= 1".into()));
        }
        if i < 0 {
            return Err(Error::RecursionEscape { k, i });
        }
        let mut chain = Vec::new();
        let (mut kk, mut ii) = (k, i);
        let value = loop {
            if let Some(&v) = self.memo.get(&(kk, ii)) {
                break v;
            }
            let c = self.base(kk, ii)?;
            if kk == 1 {
                self.memo.insert((1, ii), c);
                break c;
            }
            if c == 0 {
                return Err(Error::RecursionEscape { k: kk, i: ii });
            }
            chain.push((kk, ii));
            kk -= 1;
            ii = c - 1;
        };
        while let Some(key) = chain.pop() {
            self.memo.insert(key, value);
        }
        Ok(value)
    }
}

pub fn iterate_support(t: &ColumnFiniteOperator, k: u64, i: i64) -> Result<i64> {
    SupportRecursion::new(t)?.get(k, i)
}

/// `sum_{n<k} r^n (c0 - 1) + r^k i + 1`.
pub fn closed_form_support(r: i64, c0: i64, k: u32, i: i64) -> i64 {
    let geometric: i64 = (0..k).map(|n| r.pow(n)).sum();
    geometric * (c0 - 1) + r.pow(k) * i + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::RowRule;
    use crate::quasipoly::QuasiPoly;
    use crate::scalar::int;

    fn band(stride: i64, diags: &[(i64, QuasiPoly)]) -> ColumnFiniteOperator {
        ColumnFiniteOperator::banded(IndexDomain::Unilateral, RowRule::new(stride, diags.iter().cloned().collect())).unwrap()
    }

    fn one() -> QuasiPoly {
        QuasiPoly::constant(int(1))
    }

    #[test]
    fn shift_profile() {
        let p = SupportProfile::of(&band(1, &[(1, one())])).unwrap();
        assert_eq!(p.c(7), 9);
        assert_eq!(p.first_not_exceeding(), None);
        assert_eq!(p.collision(), None);
        assert_eq!(p.increment(), Some((1, 2)));
    }

    #[test]
    fn identity_fails_strict_growth() {
        let p = SupportProfile::of(&ColumnFiniteOperator::identity(IndexDomain::Unilateral)).unwrap();
        assert_eq!(p.first_not_exceeding(), Some(0));
        assert_eq!(p.increment(), Some((1, 1)));
    }

    #[test]
    fn vanishing_coefficient_is_moved_into_prefix() {
        // f(i) = i - 3 on the top diagonal vanishes at row 3
        let t = band(1, &[(1, one()), (2, QuasiPoly::polynomial(vec![int(-3), int(1)]))]);
        let p = SupportProfile::of(&t).unwrap();
        assert!(p.threshold > 3);
        assert_eq!(p.c(3), 5);
        assert_eq!(p.c(4), 7);
        assert_eq!(p.collision(), Some((2, 3)));
        assert_eq!(p.increment(), None);
    }

    #[test]
    fn alternating_rows_collide() {
        // even rows reach i+3, odd rows reach i+2: c_1 = 3 = c_0
        let t = band(1, &[(1, one()), (2, QuasiPoly::periodic(vec![int(1), int(0)]))]);
        let p = SupportProfile::of(&t).unwrap();
        assert_eq!(p.collision(), Some((0, 1)));
    }

    #[test]
    fn zero_rows_collide_and_escape() {
        let t = band(1, &[(1, QuasiPoly::periodic(vec![int(1), int(0)]))]);
        let p = SupportProfile::of(&t).unwrap();
        assert_eq!(p.collision(), Some((1, 3)));
        assert_eq!(iterate_support(&t, 2, 1), Err(Error::RecursionEscape { k: 2, i: 1 }));
    }

    #[test]
    fn recursion_matches_closed_form_for_shift() {
        let b = band(1, &[(1, one())]);
        assert_eq!(iterate_support(&b, 3, 0).unwrap(), 4);
        assert_eq!(iterate_support(&b, 1, 9).unwrap(), 11);
        let s = band(2, &[(1, one())]);
        for i in 0..10 {
            assert_eq!(iterate_support(&s, 2, i).unwrap(), 4 * i + 4);
        }
    }

    #[test]
    fn explicit_rows_escape() {
        let rows = (0..3).map(|i| crate::seq::FiniteSeq::unit(IndexDomain::Unilateral, i + 1).unwrap()).collect();
        let t = ColumnFiniteOperator::new(IndexDomain::Unilateral, rows, None).unwrap();
        assert_eq!(iterate_support(&t, 2, 0).unwrap(), 3);
        assert!(matches!(iterate_support(&t, 3, 2), Err(Error::RecursionEscape { .. })));
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form_support(1, 2, 3, 0), 4);
        assert_eq!(closed_form_support(2, 2, 2, 5), 24);
        assert_eq!(closed_form_support(3, 3, 0, 7), 8);
    }
}
