use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::criteria::{column_block, max_support};
use crate::error::{Error, Result};
use crate::linalg::{leftmost_pivots, solve_min_support, Vector};
use crate::operator::{ColumnFiniteOperator, OperatorSequence};
use crate::scalar::Scalar;
use crate::seq::{FiniteSeq, IndexDomain};

use super::{
    orbit_window, sample_rational, write_block, Certificate, CertificateKind, Hit, Members, Targets, Valuation,
    WindowCheck,
};

struct Stage {
    time: u64,
    end: i64,
    cols: Vec<Vector>,
}

/// First time in `after+1..=horizon` at which rows `0..l` have full rank on
/// the columns from `start` up to their support bound.
fn next_stage(members: &mut Members, l: usize, start: i64, after: u64, horizon: u64) -> Result<Option<Stage>> {
    for n in after + 1..=horizon {
        let Some(t) = members.get(n)? else { return Ok(None) };
        let end = max_support(t, l)?;
        if end <= start {
            continue;
        }
        let cols = column_block(t, l, start, end)?;
        if leftmost_pivots(&cols, l).len() == l {
            return Ok(Some(Stage { time: n, end, cols }));
        }
    }
    Ok(None)
}

/// Solves block `start..` of `x` so that rows `0..l` of `T x` equal `want`.
fn extend(t: &ColumnFiniteOperator, x: &mut FiniteSeq, stage: &Stage, start: i64, want: &[Scalar]) -> Result<()> {
    let current = t.apply_rows(x, 0, want.len() as i64)?;
    let rhs: Vector = want.iter().zip(&current).map(|(a, b)| a - b).collect();
    let sol = solve_min_support(&stage.cols, &rhs)
        .ok_or_else(|| Error::Precondition(format!("block at time {} is not solvable", stage.time)))?;
    write_block(x, start, &sol)
}

fn check_sequence(ops: &OperatorSequence) -> Result<()> {
    if ops.domain() != IndexDomain::Unilateral {
        return Err(Error::BilateralUnsupported);
    }
    Ok(())
}

/// One vector `x` and times `k_min <= n_1 < .. < n_L` with the first `l`
/// coordinates of `T_{n_l} x` equal to those of the stage-`l` target.
///
/// Blocks `[m_l, m_{l+1})` start at `m_1 = 1`, and `m_{l+1}` is the largest
/// support index of rows `0..l` of `T_{n_l}`, so later blocks leave earlier
/// windows untouched.
pub fn hc_prefix_certificate(
    ops: &OperatorSequence,
    l_max: usize,
    k_min: u64,
    horizon: u64,
    targets: &Targets,
) -> Result<Certificate> {
    check_sequence(ops)?;
    let ys = targets.resolve(l_max)?;
    let mut cert = Certificate::empty(CertificateKind::HcPrefix, ys.clone(), *targets == Targets::Enumerated);
    if l_max == 0 {
        return Ok(cert);
    }
    let mut members = Members::new(ops);
    let mut x = FiniteSeq::zero(IndexDomain::Unilateral);
    let (mut start, mut prev) = (1i64, k_min.max(1) - 1);
    for l in 1..=l_max {
        let stage = next_stage(&mut members, l, start, prev, horizon)?.ok_or(Error::NoWitness { l })?;
        let t = members.get(stage.time)?.expect("stage time is a member");
        extend(t, &mut x, &stage, start, &ys[l - 1].window(0, l as i64))?;
        cert.hits.push(Hit { vector: 0, l, time: stage.time });
        cert.checks.push(WindowCheck { vector: 0, time: stage.time, rows: l, target: Some(l) });
        start = stage.end;
        prev = stage.time;
    }
    cert.vectors.push(x);
    Ok(cert)
}

/// Vectors `u_1..u_J` where `u_j` hits the stage-`l` target at a time
/// `n(j, l)` at which every other vector has a zero window.
///
/// Pairs `(j, l)` are handled by increasing `j + l`, then increasing `l`.
/// Each pair takes a fresh block of columns and a fresh time; besides the
/// owner, every vector that already has entries gets a block that cancels
/// its window. Valuations `g(j)` are read off the result and must increase
/// strictly.
pub fn subspace_prefix_certificates(ops: &OperatorSequence, l_max: usize, j_max: usize, horizon: u64) -> Result<Certificate> {
    check_sequence(ops)?;
    let ys = Targets::Enumerated.resolve(l_max)?;
    let mut cert = Certificate::empty(CertificateKind::Subspace, ys.clone(), true);
    if l_max == 0 || j_max == 0 {
        return Ok(cert);
    }
    let mut members = Members::new(ops);
    let mut us = vec![FiniteSeq::zero(IndexDomain::Unilateral); j_max];
    let (mut start, mut prev) = (1i64, 0u64);
    for s in 2..=j_max + l_max {
        for l in 1..s {
            let j = s - l;
            if j > j_max || l > l_max {
                continue;
            }
            let stage = next_stage(&mut members, l, start, prev, horizon)?.ok_or(Error::NoWitness { l })?;
            let t = members.get(stage.time)?.expect("stage time is a member");
            let zero = vec![Scalar::zero(); l];
            for (i, u) in us.iter_mut().enumerate() {
                if i + 1 == j {
                    extend(t, u, &stage, start, &ys[l - 1].window(0, l as i64))?;
                } else if !u.is_zero() {
                    extend(t, u, &stage, start, &zero)?;
                }
            }
            for i in 0..j_max {
                let target = (i + 1 == j).then_some(l);
                cert.checks.push(WindowCheck { vector: i, time: stage.time, rows: l, target });
            }
            cert.hits.push(Hit { vector: j - 1, l, time: stage.time });
            start = stage.end;
            prev = stage.time;
        }
    }
    let mut last = i64::MIN;
    for (i, u) in us.iter().enumerate() {
        let g = u
            .min_index()
            .ok_or_else(|| Error::Precondition(format!("vector {} stayed zero", i + 1)))?
            - 1;
        if g <= last {
            return Err(Error::Precondition(format!("valuation of vector {} does not increase", i + 1)));
        }
        last = g;
        cert.valuations.push(Valuation { vector: i, grade: g });
    }
    cert.vectors = us;
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinationReport {
    pub samples: usize,
    pub seed: u64,
    pub windows_checked: usize,
    pub failures: Vec<String>,
}

impl CombinationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For seeded coefficient vectors `alpha` with `alpha_{j0} = 1`, checks that
/// `sum alpha_j u_j` hits every target of `u_{j0}` at its recorded times.
pub fn combination_check(cert: &Certificate, ops: &OperatorSequence, samples: usize, seed: u64) -> Result<CombinationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CombinationReport { samples, seed, windows_checked: 0, failures: Vec::new() };
    let j_max = cert.vectors.len();
    if j_max == 0 {
        return Ok(report);
    }
    for s in 0..samples {
        let j0 = rng.gen_range(0..j_max);
        let mut u = FiniteSeq::zero(IndexDomain::Unilateral);
        for (j, v) in cert.vectors.iter().enumerate() {
            let a = if j == j0 {
                Scalar::from_integer(1.into())
            } else if rng.gen_bool(0.2) {
                Scalar::zero()
            } else {
                sample_rational(&mut rng)
            };
            u = u.plus(&v.scaled(&a))?;
        }
        for h in cert.hits.iter().filter(|h| h.vector == j0) {
            report.windows_checked += 1;
            let got = orbit_window(ops, h.time, &u, h.l)?;
            if got != cert.targets[h.l - 1].window(0, h.l as i64) {
                report.failures.push(format!("sample {s}: j0 = {}, l = {} misses its target", j0 + 1, h.l));
            }
        }
    }
    Ok(report)
}
