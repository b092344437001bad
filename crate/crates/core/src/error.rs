use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema mismatch: {0}")]
    Schema(String),
    #[error("row {row} is not available (no explicit entry and no rule)")]
    RowUnavailable { row: i64 },
    #[error("index domains do not match")]
    DomainMismatch,
    #[error("result is not finitely determined; request a coordinate window instead")]
    UnboundedResult,
    #[error("cannot compose operators symbolically: {0}")]
    NonbandedCompose(String),
    #[error("support recursion left the available rows at k={k}, i={i}")]
    RecursionEscape { k: u64, i: i64 },
    #[error("weight vanishes at index {index}")]
    ZeroWeight { index: i64 },
    #[error("operation is only defined on the unilateral index domain")]
    BilateralUnsupported,
    #[error("malformed witness: {0}")]
    MalformedWitness(String),
    #[error("a tail rule is required: {0}")]
    TailRuleRequired(String),
    #[error("no witness found for l={l} within the horizon")]
    NoWitness { l: usize },
    #[error("schedule violation: block end {end} exceeds next block start {next_start} at time {time}")]
    ScheduleViolation { time: u64, end: i64, next_start: i64 },
    #[error("the first seminorm has finitely many nonzero weights; no further support is available")]
    SupportExhausted,
    #[error("membership failure at index {index}: {detail}")]
    MembershipFail { index: usize, detail: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 10,
            Error::Schema(_) => 11,
            Error::RowUnavailable { .. } => 12,
            Error::DomainMismatch => 13,
            Error::UnboundedResult => 14,
            Error::NonbandedCompose(_) => 15,
            Error::RecursionEscape { .. } => 16,
            Error::ZeroWeight { .. } => 17,
            Error::BilateralUnsupported => 18,
            Error::MalformedWitness(_) => 19,
            Error::TailRuleRequired(_) => 20,
            Error::NoWitness { .. } => 21,
            Error::ScheduleViolation { .. } => 22,
            Error::SupportExhausted => 23,
            Error::MembershipFail { .. } => 24,
            Error::InvalidArgument(_) => 25,
            Error::Precondition(_) => 26,
        }
    }

    /// Stable error name printed by the command-line front end.
    pub fn code_name(&self) -> &'static str {
        match self {
            Error::Parse(_) => "PARSE_ERROR",
            Error::Schema(_) => "SCHEMA_MISMATCH",
            Error::RowUnavailable { .. } => "ROW_UNAVAILABLE",
            Error::DomainMismatch => "DOMAIN_MISMATCH",
            Error::UnboundedResult => "UNBOUNDED_RESULT",
            Error::NonbandedCompose(_) => "NONBANDED_COMPOSE",
            Error::RecursionEscape { .. } => "RECURSION_ESCAPE",
            Error::ZeroWeight { .. } => "ZERO_WEIGHT",
            Error::BilateralUnsupported => "BILATERAL_UNSUPPORTED",
            Error::MalformedWitness(_) => "MALFORMED_WITNESS",
            Error::TailRuleRequired(_) => "TAIL_RULE_REQUIRED",
            Error::NoWitness { .. } => "NO_WITNESS",
            Error::ScheduleViolation { .. } => "SCHEDULE_VIOLATION",
            Error::SupportExhausted => "SUPPORT_EXHAUSTED",
            Error::MembershipFail { .. } => "MEMBERSHIP_FAIL",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
            Error::Precondition(_) => "PRECONDITION_FAILED",
        }
    }
}
