//! Outcomes of semi-decidable criteria.

use std::fmt;

use serde::Serialize;

/// `Holds` and `Refuted` are only produced when the answer was decided from
/// tail or band rules. The two horizon-bounded variants record how far a
/// search went: a universally quantified claim checked without a
/// counterexample is `VerifiedUpTo`, an existential search that found no
/// witness is `UnresolvedUpTo`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds,
    Refuted,
    VerifiedUpTo(u64),
    UnresolvedUpTo(u64),
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Refuted => 2,
            Status::VerifiedUpTo(_) => 3,
            Status::UnresolvedUpTo(_) => 4,
        }
    }

    pub fn is_holds(self) -> bool {
        self == Status::Holds
    }

    pub fn is_refuted(self) -> bool {
        self == Status::Refuted
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Holds => write!(f, "HOLDS"),
            Status::Refuted => write!(f, "REFUTED"),
            Status::VerifiedUpTo(h) => write!(f, "VERIFIED_UP_TO({h})"),
            Status::UnresolvedUpTo(h) => write!(f, "UNRESOLVED_UP_TO({h})"),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A zero interval `[start, end]` of a weight row; `end == None` is an
/// infinite interval proved from the tail rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapWitness {
    pub row: i64,
    pub start: i64,
    pub end: Option<i64>,
    pub exhaustive: bool,
}

impl GapWitness {
    pub fn length(&self) -> Option<u64> {
        self.end.map(|e| (e - self.start + 1) as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Gap(GapWitness),
    RowSummary {
        row: i64,
        exhaustive: bool,
        bounded: bool,
        longest: Option<u64>,
        is_norm: bool,
    },
    Rank {
        k: u64,
        m: i64,
        pivots: Vec<i64>,
    },
    SupportProfile {
        stride: i64,
        threshold: i64,
        prefix: Vec<i64>,
        top_offsets: Vec<Option<i64>>,
    },
    Increment {
        r: i64,
        c0: i64,
    },
    CorC {
        times: Vec<u64>,
        rows: Vec<i64>,
    },
    Schedule {
        r: i64,
        c0: i64,
        d: Vec<(u64, i64)>,
        n: Vec<(usize, u64)>,
    },
    NoSubspace {
        n: i64,
        iterate: u64,
        constant: String,
        basis_lo: i64,
        basis_hi: i64,
        samples: usize,
        exhaustive: bool,
    },
    Span {
        n: u64,
        m: Option<u64>,
        dense: bool,
    },
    Counterexample {
        detail: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub criterion: String,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refutation: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(criterion: &str, status: Status) -> Self {
        Verdict {
            criterion: criterion.to_string(),
            status,
            witnesses: Vec::new(),
            refutation: None,
            notes: Vec::new(),
        }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witnesses.push(w);
        self
    }

    pub fn refuted(criterion: &str, detail: impl Into<String>) -> Self {
        let mut v = Verdict::new(criterion, Status::Refuted);
        v.refutation = Some(detail.into());
        v
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}
