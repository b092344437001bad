//! Finite-support sequences over `Z+` or `Z`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{abs, fmt_scalar, parse_scalar, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexDomain {
    Unilateral,
    Bilateral,
}

impl IndexDomain {
    pub fn admits(self, index: i64) -> bool {
        self == IndexDomain::Bilateral || index >= 0
    }
}

/// A sequence with finitely many nonzero entries. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSeq {
    domain: IndexDomain,
    entries: BTreeMap<i64, Scalar>,
}

impl FiniteSeq {
    pub fn zero(domain: IndexDomain) -> Self {
        FiniteSeq { domain, entries: BTreeMap::new() }
    }

    pub fn unit(domain: IndexDomain, k: i64) -> Result<Self> {
        let mut s = Self::zero(domain);
        s.set(k, Scalar::from_integer(1.into()))?;
        Ok(s)
    }

    pub fn from_entries<I>(domain: IndexDomain, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Scalar)>,
    {
        let mut s = Self::zero(domain);
        for (k, v) in entries {
            let cur = s.get(k);
            s.set(k, cur + v)?;
        }
        Ok(s)
    }

    /// Dense constructor: `values[t]` lands at index `t`.
    pub fn from_dense(domain: IndexDomain, values: &[Scalar]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k as i64, v.clone()))
            .collect();
        FiniteSeq { domain, entries }
    }

    pub fn domain(&self) -> IndexDomain {
        self.domain
    }

    pub fn get(&self, k: i64) -> Scalar {
        self.entries.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, k: i64, v: Scalar) -> Result<()> {
        if !self.domain.admits(k) {
            return Err(Error::InvalidArgument(format!(
                "negative index {k} on the unilateral domain"
            )));
        }
        if v.is_zero() {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, v);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Scalar)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.keys().copied()
    }

    pub fn min_index(&self) -> Option<i64> {
        self.entries.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<i64> {
        self.entries.keys().next_back().copied()
    }

    pub fn plus(&self, other: &FiniteSeq) -> Result<FiniteSeq> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        let mut out = self.clone();
        for (k, v) in other.iter() {
            let cur = out.get(k);
            out.set(k, cur + v)?;
        }
        Ok(out)
    }

    pub fn minus(&self, other: &FiniteSeq) -> Result<FiniteSeq> {
        self.plus(&other.scaled(&Scalar::from_integer((-1).into())))
    }

    pub fn scaled(&self, c: &Scalar) -> FiniteSeq {
        if c.is_zero() {
            return Self::zero(self.domain);
        }
        FiniteSeq {
            domain: self.domain,
            entries: self.entries.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Entrywise absolute value.
    pub fn abs(&self) -> FiniteSeq {
        FiniteSeq {
            domain: self.domain,
            entries: self.entries.iter().map(|(k, v)| (*k, abs(v))).collect(),
        }
    }

    /// Entries with index in `lo..hi` as a dense vector.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<Scalar> {
        (lo..hi).map(|k| self.get(k)).collect()
    }

    /// Sparse `index:value` text pairs, ordered by index.
    pub fn to_pairs(&self) -> Vec<String> {
        self.iter().map(|(k, v)| format!("{k}:{}", fmt_scalar(v))).collect()
    }

    pub fn from_pairs<S: AsRef<str>>(domain: IndexDomain, pairs: &[S]) -> Result<FiniteSeq> {
        let mut parsed = Vec::with_capacity(pairs.len());
        for p in pairs {
            parsed.push(parse_pair(p.as_ref())?);
        }
        FiniteSeq::from_entries(domain, parsed)
    }
}

/// Parses one `index:rational` pair.
pub fn parse_pair(text: &str) -> Result<(i64, Scalar)> {
    let (k, v) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected index:value, got {text:?}")))?;
    let k: i64 = k
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad index in {text:?}")))?;
    Ok((k, parse_scalar(v)?))
}
