//! Graded seminorm families given by weight rows.
//!
//! Row `j` of a family defines `p_j(x) = max_k |x_k| a_{j,k}` (weighted sup) or
//! `p_j(x) = sum_k |x_k| a_{j,k}` (weighted l1). Rows are infinite objects, so
//! each one is an explicit block plus a tail rule that fixes every weight on
//! `[tail_start, inf)`. Bilateral rows carry a second rule for `(-inf, left_start)`.

use std::borrow::Cow;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{abs, int, is_nonneg, Scalar};
use crate::seq::{FiniteSeq, IndexDomain};
use crate::verdict::{GapWitness, Status, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    Zero,
    Constant(Scalar),
    /// `slope * t + intercept` at distance `t` from the tail start.
    Affine { slope: Scalar, intercept: Scalar },
    /// `pattern[t mod len]` at distance `t` from the tail start.
    Periodic(Vec<Scalar>),
    /// Nothing is known beyond the explicit block.
    Unspecified,
}

impl Tail {
    pub fn value(&self, t: u64) -> Option<Scalar> {
        match self {
            Tail::Zero => Some(Scalar::zero()),
            Tail::Constant(c) => Some(c.clone()),
            Tail::Affine { slope, intercept } => Some(slope * int(t as i64) + intercept),
            Tail::Periodic(p) => Some(p[(t % p.len() as u64) as usize].clone()),
            Tail::Unspecified => None,
        }
    }

    pub fn is_definite(&self) -> bool {
        !matches!(self, Tail::Unspecified)
    }

    pub fn is_all_zero(&self) -> bool {
        match self {
            Tail::Zero => true,
            Tail::Constant(c) => c.is_zero(),
            Tail::Affine { slope, intercept } => slope.is_zero() && intercept.is_zero(),
            Tail::Periodic(p) => p.iter().all(Zero::is_zero),
            Tail::Unspecified => false,
        }
    }

    /// True when the rule never produces a zero.
    pub fn is_zero_free(&self) -> bool {
        match self {
            Tail::Zero | Tail::Unspecified => false,
            Tail::Constant(c) => !c.is_zero(),
            Tail::Affine { slope, intercept } => {
                if slope.is_zero() {
                    return !intercept.is_zero();
                }
                let root = -intercept / slope;
                !(root.is_integer() && root >= Scalar::zero())
            }
            Tail::Periodic(p) => p.iter().all(|v| !v.is_zero()),
        }
    }

    /// How many steps past the start must be scanned to see every zero pattern
    /// the rule can produce.
    fn scan_span(&self) -> u64 {
        match self {
            Tail::Periodic(p) => 2 * p.len() as u64 + 1,
            _ => 2,
        }
    }

    /// Longest zero run that recurs forever in the tail, `None` for an all-zero tail.
    fn recurring_run(&self) -> Option<u64> {
        if self.is_all_zero() {
            return None;
        }
        match self {
            Tail::Periodic(p) => {
                let n = p.len();
                let (mut best, mut cur) = (0u64, 0u64);
                for t in 0..2 * n {
                    if p[t % n].is_zero() {
                        cur += 1;
                        best = best.max(cur);
                    } else {
                        cur = 0;
                    }
                }
                Some(best)
            }
            _ => Some(0),
        }
    }

    fn check_nonneg(&self) -> Result<()> {
        let ok = match self {
            Tail::Zero | Tail::Unspecified => true,
            Tail::Constant(c) => is_nonneg(c),
            Tail::Affine { slope, intercept } => is_nonneg(slope) && is_nonneg(intercept),
            Tail::Periodic(p) => !p.is_empty() && p.iter().all(is_nonneg),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Schema("tail rule produces a negative weight or is empty".into()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftTail {
    /// The rule covers indices `< start`, at distance `start - 1 - k`.
    pub start: i64,
    pub tail: Tail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightRow {
    pub explicit: BTreeMap<i64, Scalar>,
    pub tail_start: i64,
    pub tail: Tail,
    pub left: Option<LeftTail>,
}

impl WeightRow {
    pub fn new(explicit: BTreeMap<i64, Scalar>, tail_start: i64, tail: Tail) -> Self {
        WeightRow { explicit, tail_start, tail, left: None }
    }

    /// Weight 1 on `0..=j`, zero afterwards.
    pub fn window(j: i64) -> Self {
        WeightRow::new((0..=j).map(|k| (k, int(1))).collect(), j + 1, Tail::Zero)
    }

    pub fn constant(from: i64, c: Scalar) -> Self {
        WeightRow::new(BTreeMap::new(), from, Tail::Constant(c))
    }

    pub fn with_left(mut self, start: i64, tail: Tail) -> Self {
        self.left = Some(LeftTail { start, tail });
        self
    }

    pub fn weight(&self, k: i64) -> Option<Scalar> {
        if k >= self.tail_start {
            return self.tail.value((k - self.tail_start) as u64);
        }
        if let Some(left) = &self.left {
            if k < left.start {
                return left.tail.value((left.start - 1 - k) as u64);
            }
        }
        Some(self.explicit.get(&k).cloned().unwrap_or_else(Scalar::zero))
    }

    pub fn validate(&self, domain: IndexDomain) -> Result<()> {
        for (k, v) in &self.explicit {
            if !is_nonneg(v) {
                return Err(Error::Schema(format!("negative weight at index {k}")));
            }
            if *k >= self.tail_start || !domain.admits(*k) {
                return Err(Error::Schema(format!("explicit weight at {k} lies outside the explicit block")));
            }
            if let Some(left) = &self.left {
                if *k < left.start {
                    return Err(Error::Schema(format!("explicit weight at {k} overlaps the left tail")));
                }
            }
        }
        self.tail.check_nonneg()?;
        match (&self.left, domain) {
            (Some(l), IndexDomain::Bilateral) => {
                l.tail.check_nonneg()?;
                if l.start > self.tail_start {
                    return Err(Error::Schema("left tail starts after the right tail".into()));
                }
            }
            (Some(_), IndexDomain::Unilateral) => {
                return Err(Error::Schema("left tail on a unilateral row".into()));
            }
            (None, IndexDomain::Bilateral) => {
                return Err(Error::Schema("bilateral rows need a left tail rule".into()));
            }
            (None, IndexDomain::Unilateral) => {
                if self.tail_start < 0 {
                    return Err(Error::Schema("unilateral tail starts below 0".into()));
                }
            }
        }
        Ok(())
    }

    /// Lowest index of the explicit block.
    fn known_lo(&self) -> i64 {
        self.left.as_ref().map_or(0, |l| l.start)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeminormKind {
    WeightedSup,
    WeightedL1,
}

/// Rules producing rows beyond the explicit list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// Row `j` is `1` on `0..=j` and zero afterwards: the grading of `omega`.
    Omega,
    /// Every later row repeats the last explicit row.
    RepeatLast,
    /// Row `j` is `1` on `[0, known_len)` except zeros on `[m!, m!+m]` for
    /// `m >= max(j, 1)`; nothing is known past `known_len`.
    FactorialGaps { known_len: i64 },
    /// Row `n` is `1` on `k >= -n` and `0` below.
    BilateralTail,
}

impl Generator {
    fn row(&self, j: i64, explicit: &[WeightRow]) -> Option<WeightRow> {
        match self {
            Generator::Omega => Some(WeightRow::window(j)),
            Generator::RepeatLast => explicit.last().cloned(),
            Generator::FactorialGaps { known_len } => Some(factorial_gap_row(j, *known_len)),
            Generator::BilateralTail => {
                Some(WeightRow::constant(-j, int(1)).with_left(-j, Tail::Zero))
            }
        }
    }

    /// Whether every generated row is fully determined by a tail rule.
    pub fn is_definite(&self) -> bool {
        !matches!(self, Generator::FactorialGaps { .. })
    }
}

fn factorial_gap_row(j: i64, known_len: i64) -> WeightRow {
    let mut zero = vec![false; known_len.max(0) as usize];
    let (mut m, mut fact) = (1i64, 1i64);
    while fact < known_len {
        if m >= j.max(1) {
            for k in fact..=(fact + m).min(known_len - 1) {
                zero[k as usize] = true;
            }
        }
        m += 1;
        fact = match fact.checked_mul(m) {
            Some(f) => f,
            None => break,
        };
    }
    let explicit = zero
        .iter()
        .enumerate()
        .filter(|(_, z)| !**z)
        .map(|(k, _)| (k as i64, int(1)))
        .collect();
    WeightRow::new(explicit, known_len, Tail::Unspecified)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSeminormFamily {
    pub kind: SeminormKind,
    pub domain: IndexDomain,
    /// Index of the first row, usually 0 for `omega` and 1 for Koethe matrices.
    pub first_row: i64,
    pub rows: Vec<WeightRow>,
    pub generator: Option<Generator>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Codimension {
    Finite(u64),
    Infinite,
}

impl GradedSeminormFamily {
    /// `p_n(x) = max{|x_k| : 0 <= k <= n}` on `omega`.
    pub fn omega() -> Self {
        GradedSeminormFamily {
            kind: SeminormKind::WeightedSup,
            domain: IndexDomain::Unilateral,
            first_row: 0,
            rows: Vec::new(),
            generator: Some(Generator::Omega),
        }
    }

    pub fn row(&self, j: i64) -> Result<Cow<'_, WeightRow>> {
        if j < self.first_row {
            return Err(Error::RowUnavailable { row: j });
        }
        let idx = (j - self.first_row) as usize;
        if let Some(r) = self.rows.get(idx) {
            return Ok(Cow::Borrowed(r));
        }
        self.generator
            .as_ref()
            .and_then(|g| g.row(j, &self.rows))
            .map(Cow::Owned)
            .ok_or(Error::RowUnavailable { row: j })
    }

    /// The last addressable row when there is no generator.
    pub fn last_row(&self) -> Option<i64> {
        match self.generator {
            Some(_) => None,
            None => Some(self.first_row + self.rows.len() as i64 - 1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows.is_empty() && self.generator.is_none() {
            return Err(Error::Schema("a family needs rows or a generator".into()));
        }
        if matches!(self.generator, Some(Generator::RepeatLast)) && self.rows.is_empty() {
            return Err(Error::Schema("repeat-last needs at least one explicit row".into()));
        }
        for r in &self.rows {
            r.validate(self.domain)?;
        }
        Ok(())
    }

    /// Checks `a_{j,k} <= a_{j+1,k}` on rows `first_row..first_row+rows` and
    /// indices `lo..hi`, returning the first violation.
    pub fn check_monotone(&self, rows: i64, lo: i64, hi: i64) -> Result<Option<(i64, i64)>> {
        let last = self.last_row().map_or(self.first_row + rows, |l| l.min(self.first_row + rows));
        for j in self.first_row..last {
            let (a, b) = (self.row(j)?, self.row(j + 1)?);
            for k in lo..hi {
                if !self.domain.admits(k) {
                    continue;
                }
                if let (Some(x), Some(y)) = (a.weight(k), b.weight(k)) {
                    if x > y {
                        return Ok(Some((j, k)));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn eval(&self, j: i64, x: &FiniteSeq) -> Result<Scalar> {
        if x.domain() != self.domain {
            return Err(Error::DomainMismatch);
        }
        let row = self.row(j)?;
        let mut acc = Scalar::zero();
        for (k, v) in x.iter() {
            let w = row.weight(k).ok_or_else(|| {
                Error::TailRuleRequired(format!("weight a[{j},{k}] lies past the known block"))
            })?;
            let term = abs(v) * w;
            match self.kind {
                SeminormKind::WeightedSup => {
                    if term > acc {
                        acc = term;
                    }
                }
                SeminormKind::WeightedL1 => acc += term,
            }
        }
        Ok(acc)
    }

    pub fn in_kernel(&self, j: i64, x: &FiniteSeq) -> Result<bool> {
        Ok(self.eval(j, x)?.is_zero())
    }

    /// Codimension of `ker p_j`, which is the number of nonzero weights of row `j`.
    pub fn kernel_codim(&self, j: i64) -> Result<Codimension> {
        let row = self.row(j)?;
        let tails_zero = row.tail.is_all_zero() && row.left.as_ref().is_none_or(|l| l.tail.is_all_zero());
        let tails_known =
            row.tail.is_definite() && row.left.as_ref().is_none_or(|l| l.tail.is_definite());
        if !tails_known {
            return Err(Error::TailRuleRequired(format!("row {j} has an unspecified tail")));
        }
        if tails_zero {
            let n = row.explicit.values().filter(|v| !v.is_zero()).count();
            Ok(Codimension::Finite(n as u64))
        } else {
            Ok(Codimension::Infinite)
        }
    }

    /// Zero-interval structure of row `j` on the unilateral domain.
    ///
    /// The question answered is whether zero intervals of length at least
    /// `min_len` occur beyond every index.
    pub fn gap_structure(&self, j: i64, min_len: u64, horizon: u64) -> Result<GapReport> {
        if self.domain != IndexDomain::Unilateral {
            return Err(Error::BilateralUnsupported);
        }
        if min_len < 1 || horizon < min_len {
            return Err(Error::InvalidArgument("need 1 <= min_len <= horizon".into()));
        }
        let row = self.row(j)?;
        let definite = row.tail.is_definite();
        let scan_end = if definite {
            row.tail_start + row.tail.scan_span() as i64
        } else {
            row.tail_start.min(horizon as i64 + 1)
        };
        let runs = zero_runs(&row, 0, scan_end);
        let is_norm = definite
            && row.tail.is_zero_free()
            && (0..row.tail_start).all(|k| row.weight(k).is_some_and(|w| !w.is_zero()));
        let mut report = GapReport {
            row: j,
            longest: None,
            first_long: None,
            infinite: false,
            bounded: false,
            is_norm,
            status: Status::UnresolvedUpTo(horizon),
        };
        let to_witness = |(s, e): (i64, i64), exhaustive| GapWitness { row: j, start: s, end: Some(e), exhaustive };

        if definite && row.tail.is_all_zero() {
            // the run reaching the tail start never ends
            let start = runs.last().filter(|r| r.1 == scan_end - 1).map_or(row.tail_start, |r| r.0);
            let w = GapWitness { row: j, start, end: None, exhaustive: true };
            report.infinite = true;
            report.longest = Some(w.clone());
            report.first_long = Some(w);
            report.status = Status::Holds;
            return Ok(report);
        }

        let longest = runs.iter().copied().max_by_key(|(s, e)| (e - s, -s));
        report.longest = longest.map(|r| to_witness(r, false));
        let long = runs.iter().copied().find(|(s, e)| (e - s + 1) as u64 >= min_len);

        if definite {
            report.bounded = true;
            let recurring = row.tail.recurring_run().unwrap_or(0);
            if recurring >= min_len {
                let in_tail = runs
                    .iter()
                    .copied()
                    .find(|(s, e)| *s >= row.tail_start && (e - s + 1) as u64 >= min_len);
                report.first_long = in_tail.map(|r| to_witness(r, true));
                report.status = Status::Holds;
            } else {
                report.first_long = long.map(|r| to_witness(r, false));
                report.status = Status::Refuted;
            }
        } else {
            report.first_long = long.map(|r| to_witness(r, false));
            report.status = if long.is_some() {
                Status::VerifiedUpTo(horizon)
            } else {
                Status::UnresolvedUpTo(horizon)
            };
        }
        Ok(report)
    }
}

/// Maximal zero runs `[start, end]` of a row within `lo..hi` (known weights only).
fn zero_runs(row: &WeightRow, lo: i64, hi: i64) -> Vec<(i64, i64)> {
    let lo = lo.max(row.known_lo());
    let mut out = Vec::new();
    let mut start: Option<i64> = None;
    for k in lo..hi {
        match row.weight(k) {
            Some(w) if w.is_zero() => {
                start.get_or_insert(k);
            }
            _ => {
                if let Some(s) = start.take() {
                    out.push((s, k - 1));
                }
            }
        }
    }
    if let Some(s) = start {
        out.push((s, hi - 1));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub row: i64,
    pub longest: Option<GapWitness>,
    /// First interval of length at least `min_len`.
    pub first_long: Option<GapWitness>,
    /// The tail rule proves an infinite zero interval.
    pub infinite: bool,
    /// The tail rule is definite and has no infinite zero interval, so zero
    /// runs are bounded.
    pub bounded: bool,
    /// Every weight of the row is nonzero.
    pub is_norm: bool,
    pub status: Status,
}

impl GapReport {
    pub fn verdict(&self) -> Verdict {
        let mut v = Verdict::new("gap-structure", self.status);
        v.witnesses.extend(self.first_long.iter().cloned().map(crate::verdict::Witness::Gap));
        v.witnesses.extend(
            self.longest
                .iter()
                .filter(|w| Some(*w) != self.first_long.as_ref())
                .cloned()
                .map(crate::verdict::Witness::Gap),
        );
        if self.status.is_refuted() {
            v.refutation = Some(format!("row {} has bounded zero runs past its explicit block", self.row));
        }
        v
    }
}
