//! Coordinate tables of orbits.

use crate::error::{Error, Result};
use crate::operator::ColumnFiniteOperator;
use crate::scalar::{fmt_scalar, Scalar};
use crate::seq::FiniteSeq;

/// Coordinates `from..from + window` of `T^k x` for `k = 0..=steps`.
pub fn orbit_trace(
    t: &ColumnFiniteOperator,
    x: &FiniteSeq,
    steps: u64,
    from: i64,
    window: usize,
) -> Result<Vec<Vec<Scalar>>> {
    if steps < 1 || window < 1 {
        return Err(Error::InvalidArgument("steps and window must be at least 1".into()));
    }
    if x.domain() != t.domain() {
        return Err(Error::DomainMismatch);
    }
    let hi = from + window as i64;
    let mut y = x.clone();
    let mut rows = vec![y.window(from, hi)];
    for _ in 0..steps {
        y = t.apply(&y)?;
        rows.push(y.window(from, hi));
    }
    Ok(rows)
}

/// Comma-separated table with a header `k,x_from,...`.
pub fn trace_csv(rows: &[Vec<Scalar>], from: i64) -> String {
    let width = rows.first().map_or(0, Vec::len);
    let mut out = String::from("k");
    for i in 0..width {
        out.push_str(&format!(",x_{}", from + i as i64));
    }
    out.push('\n');
    for (k, r) in rows.iter().enumerate() {
        out.push_str(&k.to_string());
        for v in r {
            out.push(',');
            out.push_str(&fmt_scalar(v));
        }
        out.push('\n');
    }
    out
}
