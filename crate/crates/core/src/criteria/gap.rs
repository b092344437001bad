use crate::error::{Error, Result};
use crate::presets::Weights;
use crate::seminorm::{Generator, GradedSeminormFamily};
use crate::seq::IndexDomain;
use crate::verdict::{Status, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WsGapParams {
    /// Interval length searched for on rows without a definite tail.
    pub min_len: u64,
    /// Rows examined when the family is generated by a rule that is not definite.
    pub sample_rows: i64,
    pub horizon: u64,
    /// User assertion that finite sequences are dense in the space.
    pub finite_dense: bool,
}

impl Default for WsGapParams {
    fn default() -> Self {
        WsGapParams { min_len: 5, sample_rows: 5, horizon: 10_000, finite_dense: true }
    }
}

/// Checks that `{k : a_{j,k} = 0}` contains arbitrarily long intervals for every row.
///
/// A row is settled exactly when its tail rule is definite: an all-zero tail
/// gives an infinite interval, any other definite tail bounds the zero runs.
/// Rows with unknown tails are searched for intervals of length `min_len`.
pub fn ws_gap_criterion(
    space: &GradedSeminormFamily,
    weights: Option<&Weights>,
    p: &WsGapParams,
) -> Result<Verdict> {
    const NAME: &str = "ws-gap";
    if space.domain != IndexDomain::Unilateral {
        return Err(Error::BilateralUnsupported);
    }
    if let Some(w) = weights {
        if let Some(index) = w.first_zero(Some(1)) {
            return Err(Error::ZeroWeight { index });
        }
    }
    let all_rows = match &space.generator {
        None => true,
        Some(g) => g.is_definite(),
    };
    let last = match (&space.generator, space.last_row()) {
        (None, Some(l)) => l,
        (Some(Generator::RepeatLast), _) => space.first_row + space.rows.len() as i64 - 1,
        (Some(Generator::Omega), _) => space.first_row,
        _ => space.first_row + p.sample_rows - 1,
    };

    let mut witnesses = Vec::new();
    let mut refuted: Option<String> = None;
    let mut norm_row = None;
    let mut all_infinite = true;
    let mut all_found = true;
    for j in space.first_row..=last {
        let r = space.gap_structure(j, p.min_len.max(1), p.horizon.max(p.min_len))?;
        witnesses.push(Witness::RowSummary {
            row: j,
            exhaustive: r.infinite,
            bounded: r.bounded,
            longest: r.longest.as_ref().and_then(|w| w.length()),
            is_norm: r.is_norm,
        });
        if r.infinite {
            if let Some(w) = r.first_long {
                witnesses.push(Witness::Gap(w));
            }
            continue;
        }
        all_infinite = false;
        if r.is_norm && norm_row.is_none() {
            norm_row = Some(j);
        }
        if r.bounded {
            refuted.get_or_insert(format!("row {j} has a definite tail without an infinite zero interval"));
        } else if let Some(w) = r.first_long {
            witnesses.push(Witness::Gap(w));
        } else {
            all_found = false;
        }
    }

    let status = if refuted.is_some() {
        Status::Refuted
    } else if all_infinite && all_rows {
        Status::Holds
    } else if all_found {
        Status::VerifiedUpTo(p.horizon)
    } else {
        Status::UnresolvedUpTo(p.horizon)
    };
    let mut v = Verdict::new(NAME, status);
    v.witnesses = witnesses;
    v.refutation = refuted;
    if let Some(j) = norm_row {
        v = v.note(format!("continuous norm: row {j} has no zero weight"));
    }
    if !p.finite_dense {
        v = v.note("finite sequences are not asserted dense; the sufficient direction does not apply");
    } else {
        v = v.note("finite sequences asserted dense");
    }
    if !all_rows {
        v = v.note(format!("rows {}..={last} examined", space.first_row));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::seminorm::{SeminormKind, WeightRow};

    fn constant_tail() -> GradedSeminormFamily {
        GradedSeminormFamily {
            kind: SeminormKind::WeightedSup,
            domain: IndexDomain::Unilateral,
            first_row: 1,
            rows: vec![WeightRow::constant(0, int(1))],
            generator: Some(Generator::RepeatLast),
        }
    }

    #[test]
    fn omega_holds() {
        let v = ws_gap_criterion(&GradedSeminormFamily::omega(), Some(&Weights::constant(int(3))), &WsGapParams::default()).unwrap();
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn constant_tail_refuted_with_norm_flag() {
        let v = ws_gap_criterion(&constant_tail(), None, &WsGapParams::default()).unwrap();
        assert_eq!(v.status, Status::Refuted);
        assert!(v.notes.iter().any(|n| n.starts_with("continuous norm: row 1")));
    }

    #[test]
    fn gap_family_verified() {
        let f = GradedSeminormFamily {
            kind: SeminormKind::WeightedSup,
            domain: IndexDomain::Unilateral,
            first_row: 1,
            rows: Vec::new(),
            generator: Some(Generator::FactorialGaps { known_len: 10_000 }),
        };
        let v = ws_gap_criterion(&f, None, &WsGapParams::default()).unwrap();
        assert_eq!(v.status, Status::VerifiedUpTo(10_000));
        let p = WsGapParams { sample_rows: 8, ..WsGapParams::default() };
        assert_eq!(ws_gap_criterion(&f, None, &p).unwrap().status, Status::UnresolvedUpTo(10_000));
    }

    #[test]
    fn bilateral_rejected() {
        let mut f = GradedSeminormFamily::omega();
        f.domain = IndexDomain::Bilateral;
        assert_eq!(ws_gap_criterion(&f, None, &WsGapParams::default()), Err(Error::BilateralUnsupported));
    }
}
