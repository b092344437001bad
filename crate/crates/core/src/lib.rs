//! Exact toolkit for linear dynamics on sequence spaces.
//!
//! Sequences, seminorm families and band operators are exact rational
//! objects. Criteria report `HOLDS`/`REFUTED` when they were decided from tail
//! or band rules and a horizon-bounded status otherwise; constructors emit
//! certificates that can be re-checked independently.

pub mod config;
pub mod constructor;
pub mod criteria;
pub mod error;
pub mod linalg;
pub mod operator;
pub mod presets;
pub mod quasipoly;
pub mod report;
pub mod scalar;
pub mod seminorm;
pub mod seq;
pub mod support;
pub mod trace;
pub mod verdict;

pub use error::{Error, Result};
pub use operator::{ColumnFiniteOperator, OperatorSequence, RowRule};
pub use quasipoly::QuasiPoly;
pub use scalar::Scalar;
pub use seminorm::{GradedSeminormFamily, SeminormKind, Tail, WeightRow};
pub use seq::{FiniteSeq, IndexDomain};
pub use verdict::{Status, Verdict, Witness};
