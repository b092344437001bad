//! JSON reports and certificate files.
//!
//! Reports are pretty-printed JSON objects with sorted keys and no clock or
//! host data, so equal inputs give byte-identical output. Every report has
//! `tool`, `version`, `command`, `config` (the echoed inputs, file contents
//! included) and `result`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
pub use serde_json::Value;
use serde_json::json;

use crate::constructor::{
    BasicSeqBundle, BasicSeqReport, BaskerReport, Certificate, CertificateKind, CombinationReport, DensityReport, Hit,
    Valuation, VerifyReport, WindowCheck,
};
use crate::error::{Error, Result};
use crate::scalar::{fmt_scalar, Scalar};
use crate::seq::{FiniteSeq, IndexDomain};
use crate::verdict::Verdict;

pub const TOOL: &str = "linedyn";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CERTIFICATE_FORMAT: &str = "linedyn-certificate/1";

/// The full report text, ending in a newline.
pub fn envelope(command: &str, config: &BTreeMap<String, String>, result: Value) -> String {
    let v = json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "config": config,
        "result": result,
    });
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn scalar_value(v: &Scalar) -> Value {
    Value::String(fmt_scalar(v))
}

fn scalars_value(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_value).collect())
}

pub fn seq_value(x: &FiniteSeq) -> Value {
    json!(x.to_pairs())
}

pub fn verdict_value(v: &Verdict) -> Value {
    serde_json::to_value(v).expect("verdicts serialize")
}

pub fn density_value(r: &DensityReport) -> Value {
    json!({
        "l": r.l,
        "nu": r.nu,
        "horizon": r.horizon,
        "count": r.count,
        "min_element": r.min_element,
        "burn_in": r.burn_in,
        "empirical": r.empirical.as_ref().map(scalar_value),
        "declared": scalar_value(&r.declared),
        "passed": r.passed,
    })
}

pub fn bundle_value(b: &BasicSeqBundle) -> Value {
    json!({
        "vectors": b.vectors.iter().map(seq_value).collect::<Vec<_>>(),
        "eps": scalars_value(&b.eps),
        "K": scalar_value(&b.k),
        "perturbed": b.perturbed.as_ref().map(|v| v.iter().map(seq_value).collect::<Vec<_>>()),
        "delta": b.delta.as_ref().map(scalar_value),
    })
}

pub fn basic_report_value(r: &BasicSeqReport) -> Value {
    json!({
        "samples": r.samples,
        "seed": r.seed,
        "rng": "ChaCha8",
        "normalization_checks": r.normalization_checks,
        "prefix_checks": r.prefix_checks,
        "coefficient_checks": r.coefficient_checks,
        "lower_bound_checks": r.lower_bound_checks,
        "failures": r.failures,
        "passed": r.passed(),
    })
}

pub fn basker_value(r: &BaskerReport) -> Value {
    json!({ "vectors": r.vectors, "tail_checks": r.tail_checks })
}

pub fn combination_value(r: &CombinationReport) -> Value {
    json!({
        "samples": r.samples,
        "seed": r.seed,
        "rng": "ChaCha8",
        "windows_checked": r.windows_checked,
        "failures": r.failures,
        "passed": r.passed(),
    })
}

pub fn verify_value(r: &VerifyReport) -> Value {
    json!({
        "checks": r.checks,
        "valuations": r.valuations,
        "failures": r.failures,
        "passed": r.passed(),
    })
}

pub fn trace_value(rows: &[Vec<Scalar>], from: i64) -> Value {
    json!({
        "from": from,
        "rows": rows.iter().map(|r| scalars_value(r)).collect::<Vec<_>>(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HitFile {
    vector: usize,
    l: usize,
    time: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CheckFile {
    vector: usize,
    time: u64,
    rows: usize,
    /// Stage whose target the window must equal; absent for a zero window.
    target: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ValuationFile {
    vector: usize,
    grade: i64,
}

/// Parameters of a recorded combination check, re-run by `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CombinationSpec {
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateFile {
    format: String,
    tool: String,
    version: String,
    kind: String,
    /// Operator file text the certificate was built from.
    operator: String,
    parameters: BTreeMap<String, String>,
    vectors: Vec<Vec<String>>,
    targets: Vec<Vec<String>>,
    enumerated_targets: bool,
    hits: Vec<HitFile>,
    checks: Vec<CheckFile>,
    valuations: Vec<ValuationFile>,
    warnings: Vec<String>,
    combination: Option<CombinationSpec>,
}

/// A certificate together with the operator text needed to re-check it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateDoc {
    pub certificate: Certificate,
    pub operator: String,
    pub parameters: BTreeMap<String, String>,
    pub combination: Option<CombinationSpec>,
}

impl CertificateDoc {
    pub fn to_text(&self) -> String {
        let c = &self.certificate;
        let f = CertificateFile {
            format: CERTIFICATE_FORMAT.into(),
            tool: TOOL.into(),
            version: VERSION.into(),
            kind: c.kind.name().into(),
            operator: self.operator.clone(),
            parameters: self.parameters.clone(),
            vectors: c.vectors.iter().map(FiniteSeq::to_pairs).collect(),
            targets: c.targets.iter().map(FiniteSeq::to_pairs).collect(),
            enumerated_targets: c.enumerated_targets,
            hits: c.hits.iter().map(|h| HitFile { vector: h.vector, l: h.l, time: h.time }).collect(),
            checks: c
                .checks
                .iter()
                .map(|k| CheckFile { vector: k.vector, time: k.time, rows: k.rows, target: k.target })
                .collect(),
            valuations: c.valuations.iter().map(|v| ValuationFile { vector: v.vector, grade: v.grade }).collect(),
            warnings: c.warnings.clone(),
            combination: self.combination,
        };
        let mut s = serde_json::to_string_pretty(&f).expect("certificates serialize");
        s.push('\n');
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let f: CertificateFile = serde_json::from_str(text).map_err(|e| {
            if e.is_data() {
                Error::Schema(e.to_string())
            } else {
                Error::Parse(e.to_string())
            }
        })?;
        if f.format != CERTIFICATE_FORMAT {
            return Err(Error::Schema(format!("unsupported certificate format {:?}", f.format)));
        }
        let seqs = |v: &[Vec<String>]| -> Result<Vec<FiniteSeq>> {
            v.iter().map(|p| FiniteSeq::from_pairs(IndexDomain::Unilateral, p)).collect()
        };
        let certificate = Certificate {
            kind: CertificateKind::from_name(&f.kind)?,
            vectors: seqs(&f.vectors)?,
            targets: seqs(&f.targets)?,
            enumerated_targets: f.enumerated_targets,
            hits: f.hits.iter().map(|h| Hit { vector: h.vector, l: h.l, time: h.time }).collect(),
            checks: f
                .checks
                .iter()
                .map(|k| WindowCheck { vector: k.vector, time: k.time, rows: k.rows, target: k.target })
                .collect(),
            valuations: f.valuations.iter().map(|v| Valuation { vector: v.vector, grade: v.grade }).collect(),
            warnings: f.warnings,
        };
        for h in &certificate.hits {
            if h.l == 0 || h.time == 0 {
                return Err(Error::MalformedWitness("stages and times start at 1".into()));
            }
        }
        for c in &certificate.checks {
            if c.time == 0 || c.target == Some(0) {
                return Err(Error::MalformedWitness("stages and times start at 1".into()));
            }
        }
        Ok(CertificateDoc { certificate, operator: f.operator, parameters: f.parameters, combination: f.combination })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructor::{hc_prefix_certificate, Targets};
    use crate::operator::OperatorSequence;
    use crate::presets::backward_shift;

    #[test]
    fn certificate_round_trip() {
        let ops = OperatorSequence::Iterates(backward_shift());
        let certificate = hc_prefix_certificate(&ops, 3, 1, 50, &Targets::Enumerated).unwrap();
        let doc = CertificateDoc {
            certificate,
            operator: "preset = \"backward-shift\"\n".into(),
            parameters: BTreeMap::from([("L".into(), "3".into())]),
            combination: None,
        };
        let text = doc.to_text();
        let back = CertificateDoc::from_text(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn bad_files() {
        assert!(matches!(CertificateDoc::from_text("{"), Err(Error::Parse(_))));
        assert!(matches!(CertificateDoc::from_text("{\"format\": 1}"), Err(Error::Schema(_))));
    }

    #[test]
    fn envelope_is_stable() {
        let cfg = BTreeMap::from([("b".to_string(), "2".to_string()), ("a".to_string(), "1".to_string())]);
        let a = envelope("check", &cfg, json!({"z": 1, "y": [1, 2]}));
        assert_eq!(a, envelope("check", &cfg, json!({"y": [1, 2], "z": 1})));
        assert!(a.find("\"a\"").unwrap() < a.find("\"b\"").unwrap());
    }
}
