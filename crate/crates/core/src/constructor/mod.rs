//! Finite stages of the hypercyclic-vector and subspace constructions.
//!
//! Every block is solved exactly, so a certificate records equalities.
//! [`Certificate::verify`] recomputes each window by applying the operator
//! to the stored vectors and needs nothing else from the construction.

mod basic;
mod dense;
pub mod density;
mod fhc;
mod hc;

pub use basic::{basic_seq_build, basic_seq_verify, basker_verify, BasicSeqBundle, BasicSeqReport, BaskerReport};
pub use dense::{dense_target, enumerate_dense, index_of};
pub use density::{density_sets, DensityReport};
pub use fhc::fhc_prefix_certificate;
pub use hc::{combination_check, hc_prefix_certificate, subspace_prefix_certificates, CombinationReport};

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::operator::{ColumnFiniteOperator, OperatorSequence};
use crate::scalar::{ratio, Scalar};
use crate::seminorm::GradedSeminormFamily;
use crate::seq::{FiniteSeq, IndexDomain};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    HcPrefix,
    Subspace,
    Fhc,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::HcPrefix => "hc-prefix",
            CertificateKind::Subspace => "subspace",
            CertificateKind::Fhc => "fhc",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "hc-prefix" => Ok(CertificateKind::HcPrefix),
            "subspace" => Ok(CertificateKind::Subspace),
            "fhc" => Ok(CertificateKind::Fhc),
            _ => Err(Error::Schema(format!("unknown certificate kind {s:?}"))),
        }
    }
}

/// Vector `vector` is aimed at `targets[l - 1]` at time `time`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hit {
    pub vector: usize,
    pub l: usize,
    pub time: u64,
}

/// `apply_window(T_time, vectors[vector], rows)` equals the first `rows`
/// coordinates of `targets[target - 1]`, or vanishes when `target` is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowCheck {
    pub vector: usize,
    pub time: u64,
    pub rows: usize,
    pub target: Option<usize>,
}

/// `vectors[vector]` lies in `ker p_grade` but not in `ker p_{grade+1}` on `omega`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    pub vector: usize,
    pub grade: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub vectors: Vec<FiniteSeq>,
    /// `targets[l - 1]` is the stage-`l` target.
    pub targets: Vec<FiniteSeq>,
    /// Whether the targets are the documented enumeration.
    pub enumerated_targets: bool,
    pub hits: Vec<Hit>,
    pub checks: Vec<WindowCheck>,
    pub valuations: Vec<Valuation>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: usize,
    pub valuations: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Stage targets: the enumeration, or user-given vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Targets {
    Enumerated,
    Explicit(Vec<FiniteSeq>),
}

impl Targets {
    fn resolve(&self, l_max: usize) -> Result<Vec<FiniteSeq>> {
        match self {
            Targets::Enumerated => Ok((1..=l_max).map(dense_target).collect()),
            Targets::Explicit(v) => {
                if v.len() < l_max {
                    return Err(Error::InvalidArgument(format!("{l_max} targets needed, {} given", v.len())));
                }
                if v.iter().any(|y| y.domain() != IndexDomain::Unilateral) {
                    return Err(Error::DomainMismatch);
                }
                Ok(v[..l_max].to_vec())
            }
        }
    }
}

/// `T_n x` restricted to rows `0..l`, computed by repeated application when the
/// sequence consists of iterates of an operator with a band rule.
pub fn orbit_window(ops: &OperatorSequence, n: u64, x: &FiniteSeq, l: usize) -> Result<Vec<Scalar>> {
    if n == 0 {
        return Err(Error::InvalidArgument("times start at 1".into()));
    }
    match ops {
        OperatorSequence::Iterates(t) if t.rule().is_some() => {
            let mut y = x.clone();
            for _ in 0..n {
                y = t.apply(&y)?;
            }
            Ok(y.window(0, l as i64))
        }
        OperatorSequence::Iterates(t) => t.iterate(n as u32)?.apply_window(x, l as i64),
        OperatorSequence::Explicit(v) => v
            .get(n as usize - 1)
            .ok_or_else(|| Error::InvalidArgument(format!("time {n} exceeds the explicit sequence")))?
            .apply_window(x, l as i64),
    }
}

impl Certificate {
    fn empty(kind: CertificateKind, targets: Vec<FiniteSeq>, enumerated_targets: bool) -> Self {
        Certificate {
            kind,
            vectors: Vec::new(),
            targets,
            enumerated_targets,
            hits: Vec::new(),
            checks: Vec::new(),
            valuations: Vec::new(),
            warnings: Vec::new(),
        }
    }

    /// Re-evaluates every window equality and valuation of the certificate.
    pub fn verify(&self, ops: &OperatorSequence) -> Result<VerifyReport> {
        let mut failures = Vec::new();
        if self.enumerated_targets {
            for (i, y) in self.targets.iter().enumerate() {
                if *y != dense_target(i + 1) {
                    failures.push(format!("target {} differs from the enumeration", i + 1));
                }
            }
        }
        let mut last: Vec<Option<u64>> = vec![None; self.vectors.len()];
        for h in &self.hits {
            let Some(slot) = last.get_mut(h.vector) else {
                failures.push(format!("hit refers to missing vector {}", h.vector));
                continue;
            };
            if slot.is_some_and(|t| t >= h.time) {
                failures.push(format!("hit times of vector {} are not increasing at {}", h.vector, h.time));
            }
            *slot = Some(h.time);
            let covered = self.checks.iter().any(|c| {
                c.vector == h.vector && c.time == h.time && c.rows == h.l && c.target == Some(h.l)
            });
            if !covered {
                failures.push(format!("hit (vector {}, l {}) has no window check", h.vector, h.l));
            }
        }
        for c in &self.checks {
            let x = self
                .vectors
                .get(c.vector)
                .ok_or_else(|| Error::MalformedWitness(format!("check refers to missing vector {}", c.vector)))?;
            let got = orbit_window(ops, c.time, x, c.rows)?;
            let want = match c.target {
                Some(l) => self
                    .targets
                    .get(l - 1)
                    .ok_or_else(|| Error::MalformedWitness(format!("missing target {l}")))?
                    .window(0, c.rows as i64),
                None => vec![Scalar::zero(); c.rows],
            };
            if got != want {
                let k = got.iter().zip(&want).position(|(a, b)| a != b).unwrap_or(0);
                failures.push(format!("vector {} at time {}: residual nonzero in row {k}", c.vector, c.time));
            }
        }
        let omega = GradedSeminormFamily::omega();
        for v in &self.valuations {
            let x = self
                .vectors
                .get(v.vector)
                .ok_or_else(|| Error::MalformedWitness(format!("valuation refers to missing vector {}", v.vector)))?;
            let inside = v.grade < 0 || omega.in_kernel(v.grade, x)?;
            if !inside || omega.in_kernel(v.grade + 1, x)? {
                failures.push(format!("vector {} is not in ker p_{} minus ker p_{}", v.vector, v.grade, v.grade + 1));
            }
        }
        Ok(VerifyReport { checks: self.checks.len(), valuations: self.valuations.len(), failures })
    }
}

/// Cached members `T_1, T_2, ...` of a sequence.
struct Members<'a> {
    ops: &'a OperatorSequence,
    cache: Vec<ColumnFiniteOperator>,
}

impl<'a> Members<'a> {
    fn new(ops: &'a OperatorSequence) -> Self {
        Members { ops, cache: Vec::new() }
    }

    fn get(&mut self, n: u64) -> Result<Option<&ColumnFiniteOperator>> {
        match self.ops {
            OperatorSequence::Explicit(v) => Ok(v.get(n as usize - 1)),
            OperatorSequence::Iterates(t) => {
                while (self.cache.len() as u64) < n {
                    let next = match self.cache.last() {
                        Some(p) => t.compose(p)?,
                        None => t.clone(),
                    };
                    self.cache.push(next);
                }
                Ok(self.cache.get(n as usize - 1))
            }
        }
    }
}

/// Nonzero rational with numerator and denominator in `1..=9`.
pub(crate) fn sample_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let p = rng.gen_range(1..=9i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    ratio(p, rng.gen_range(1..=9))
}

/// Writes `sol[j]` at index `lo + j`.
fn write_block(x: &mut FiniteSeq, lo: i64, sol: &std::collections::BTreeMap<usize, Scalar>) -> Result<()> {
    for (j, v) in sol {
        x.set(lo + *j as i64, v.clone())?;
    }
    Ok(())
}
