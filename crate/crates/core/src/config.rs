//! TOML input files.
//!
//! Rationals are strings `"p/q"` (or integers `"p"`), sparse vectors are
//! lists of `"index:rational"` pairs. Syntax errors and bad rationals are
//! [`Error::Parse`]; well-formed files with missing or unknown keys are
//! [`Error::Schema`]. The grammars are documented in the README.

use std::collections::{BTreeMap, BTreeSet};

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::criteria::{NoSubspaceWitness, TargetFamily, TargetTail};
use crate::error::{Error, Result};
use crate::operator::{ColumnFiniteOperator, OperatorSequence, RowRule};
use crate::presets::{self, Weights};
use crate::quasipoly::QuasiPoly;
use crate::scalar::{int, parse_scalar, Scalar};
use crate::seminorm::{Generator, GradedSeminormFamily, SeminormKind, Tail, WeightRow};
use crate::seq::{parse_pair, FiniteSeq, IndexDomain};

fn load<T: DeserializeOwned>(text: &str) -> Result<T> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Parse(e.message().to_string()))?;
    toml::Value::Table(table)
        .try_into()
        .map_err(|e: toml::de::Error| Error::Schema(e.message().to_string()))
}

fn scalars(v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| parse_scalar(s)).collect()
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum DomainFile {
    #[default]
    Unilateral,
    Bilateral,
}

impl From<DomainFile> for IndexDomain {
    fn from(d: DomainFile) -> Self {
        match d {
            DomainFile::Unilateral => IndexDomain::Unilateral,
            DomainFile::Bilateral => IndexDomain::Bilateral,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum KindFile {
    WeightedSup,
    WeightedL1,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum GeneratorFile {
    Omega,
    RepeatLast,
    FactorialGaps,
    BilateralTail,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum TailFile {
    Zero,
    Constant { value: String },
    Affine { slope: String, intercept: String },
    Periodic { pattern: Vec<String> },
    Unspecified,
}

impl TailFile {
    fn build(&self) -> Result<Tail> {
        Ok(match self {
            TailFile::Zero => Tail::Zero,
            TailFile::Constant { value } => Tail::Constant(parse_scalar(value)?),
            TailFile::Affine { slope, intercept } => {
                Tail::Affine { slope: parse_scalar(slope)?, intercept: parse_scalar(intercept)? }
            }
            TailFile::Periodic { pattern } => Tail::Periodic(scalars(pattern)?),
            TailFile::Unspecified => Tail::Unspecified,
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LeftFile {
    start: i64,
    tail: TailFile,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RowFile {
    #[serde(default)]
    explicit: Vec<String>,
    tail_start: Option<i64>,
    tail: TailFile,
    left: Option<LeftFile>,
}

impl RowFile {
    fn build(&self) -> Result<WeightRow> {
        let mut explicit = BTreeMap::new();
        for p in &self.explicit {
            let (k, v) = parse_pair(p)?;
            if explicit.insert(k, v).is_some() {
                return Err(Error::Schema(format!("index {k} repeated in a row")));
            }
        }
        let start = self.tail_start.unwrap_or_else(|| explicit.keys().next_back().map_or(0, |k| k + 1));
        let mut row = WeightRow::new(explicit, start, self.tail.build()?);
        if let Some(l) = &self.left {
            row = row.with_left(l.start, l.tail.build()?);
        }
        Ok(row)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceFile {
    kind: KindFile,
    #[serde(default)]
    index_domain: DomainFile,
    #[serde(default)]
    first_row: i64,
    generator: Option<GeneratorFile>,
    known_len: Option<i64>,
    #[serde(default = "yes")]
    finite_dense: bool,
    #[serde(default)]
    rows: Vec<RowFile>,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceConfig {
    pub family: GradedSeminormFamily,
    /// User assertion that finite sequences are dense.
    pub finite_dense: bool,
}

/// Parses and validates a space file.
pub fn parse_space(text: &str) -> Result<SpaceConfig> {
    let f: SpaceFile = load(text)?;
    let generator = match (&f.generator, f.known_len) {
        (Some(GeneratorFile::FactorialGaps), Some(n)) => Some(Generator::FactorialGaps { known_len: n }),
        (Some(GeneratorFile::FactorialGaps), None) => {
            return Err(Error::Schema("factorial-gaps needs known_len".into()));
        }
        (_, Some(_)) => return Err(Error::Schema("known_len only applies to factorial-gaps".into())),
        (Some(GeneratorFile::Omega), None) => Some(Generator::Omega),
        (Some(GeneratorFile::RepeatLast), None) => Some(Generator::RepeatLast),
        (Some(GeneratorFile::BilateralTail), None) => Some(Generator::BilateralTail),
        (None, None) => None,
    };
    let family = GradedSeminormFamily {
        kind: match f.kind {
            KindFile::WeightedSup => SeminormKind::WeightedSup,
            KindFile::WeightedL1 => SeminormKind::WeightedL1,
        },
        domain: f.index_domain.into(),
        first_row: f.first_row,
        rows: f.rows.iter().map(RowFile::build).collect::<Result<_>>()?,
        generator,
    };
    family.validate()?;
    Ok(SpaceConfig { family, finite_dense: f.finite_dense })
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuasiFile {
    #[serde(default)]
    coeffs: Vec<String>,
    #[serde(default)]
    values: Vec<String>,
    #[serde(default)]
    residues: Vec<Vec<String>>,
}

impl QuasiFile {
    fn build(&self) -> Result<QuasiPoly> {
        let given = [!self.coeffs.is_empty(), !self.values.is_empty(), !self.residues.is_empty()];
        if given.iter().filter(|g| **g).count() != 1 {
            return Err(Error::Schema("give exactly one of coeffs, values, residues".into()));
        }
        if !self.coeffs.is_empty() {
            Ok(QuasiPoly::polynomial(scalars(&self.coeffs)?))
        } else if !self.values.is_empty() {
            Ok(QuasiPoly::periodic(scalars(&self.values)?))
        } else {
            Ok(QuasiPoly::from_residues(self.residues.iter().map(|r| scalars(r)).collect::<Result<_>>()?))
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightsFile {
    #[serde(default)]
    prefix: Vec<String>,
    tail: Option<QuasiFile>,
}

impl WeightsFile {
    fn build(&self) -> Result<Weights> {
        Ok(Weights {
            prefix: scalars(&self.prefix)?,
            tail: match &self.tail {
                Some(q) => q.build()?,
                None => QuasiPoly::constant(int(1)),
            },
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagonalFile {
    offset: i64,
    #[serde(flatten)]
    coefficient: QuasiFile,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum PresetFile {
    Identity,
    Zero,
    BackwardShift,
    WeightedBackwardShift,
    WeightedForwardShift,
    PolynomialShiftMix,
    StrideShift,
    Band,
    Explicit,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorFile {
    #[serde(default)]
    index_domain: DomainFile,
    preset: Option<PresetFile>,
    scale: Option<String>,
    weights: Option<WeightsFile>,
    #[serde(default)]
    poly: Vec<String>,
    #[serde(default)]
    alpha: Vec<String>,
    stride: Option<i64>,
    offset: Option<i64>,
    #[serde(default)]
    rows: Vec<Vec<String>>,
    #[serde(default)]
    diagonals: Vec<DiagonalFile>,
    power: Option<u32>,
    #[serde(default)]
    members: Vec<OperatorFile>,
}

impl OperatorFile {
    fn weights(&self) -> Result<Weights> {
        match &self.weights {
            Some(w) => w.build(),
            None => Ok(Weights::constant(int(1))),
        }
    }

    fn build(&self, domain: IndexDomain) -> Result<ColumnFiniteOperator> {
        if !self.members.is_empty() {
            return Err(Error::Schema("members cannot be nested".into()));
        }
        let preset = self.preset.ok_or_else(|| Error::Schema("missing preset".into()))?;
        let rows = || -> Result<Vec<FiniteSeq>> { self.rows.iter().map(|r| FiniteSeq::from_pairs(domain, r)).collect() };
        let t = match preset {
            PresetFile::Identity => ColumnFiniteOperator::identity(domain),
            PresetFile::Zero => ColumnFiniteOperator::zero(domain),
            PresetFile::BackwardShift => presets::weighted_backward_shift(domain, &Weights::constant(int(1)))?,
            PresetFile::WeightedBackwardShift => presets::weighted_backward_shift(domain, &self.weights()?)?,
            PresetFile::WeightedForwardShift => presets::weighted_forward_shift(domain, &self.weights()?)?,
            PresetFile::PolynomialShiftMix => {
                presets::polynomial_shift_mix(domain, &scalars(&self.poly)?, &scalars(&self.alpha)?, &self.weights()?)?
            }
            PresetFile::StrideShift => {
                let stride = self.stride.ok_or_else(|| Error::Schema("stride-shift needs stride".into()))?;
                presets::stride_shift(domain, stride, self.offset.unwrap_or(0))?
            }
            PresetFile::Band => {
                let mut diagonals = BTreeMap::new();
                for d in &self.diagonals {
                    if diagonals.insert(d.offset, d.coefficient.build()?).is_some() {
                        return Err(Error::Schema(format!("diagonal {} repeated", d.offset)));
                    }
                }
                let rule = RowRule::new(self.stride.unwrap_or(1), diagonals);
                ColumnFiniteOperator::new(domain, rows()?, Some(rule))?
            }
            PresetFile::Explicit => ColumnFiniteOperator::new(domain, rows()?, None)?,
        };
        let t = match &self.scale {
            Some(c) => t.scale(&parse_scalar(c)?),
            None => t,
        };
        match self.power {
            Some(0) => Err(Error::Schema("power must be at least 1".into())),
            Some(k) => t.iterate(k),
            None => Ok(t),
        }
    }

    fn weights_for_space(&self) -> Result<Option<Weights>> {
        match self.preset {
            Some(
                PresetFile::WeightedBackwardShift | PresetFile::WeightedForwardShift | PresetFile::PolynomialShiftMix,
            ) => self.weights().map(Some),
            Some(PresetFile::BackwardShift) => Ok(Some(Weights::constant(int(1)))),
            _ => Ok(None),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OperatorConfig {
    pub sequence: OperatorSequence,
    /// Shift weights, when the operator is a weighted shift preset.
    pub weights: Option<Weights>,
}

impl OperatorConfig {
    /// The operator whose iterates form the sequence.
    pub fn single(&self) -> Result<&ColumnFiniteOperator> {
        match &self.sequence {
            OperatorSequence::Iterates(t) => Ok(t),
            OperatorSequence::Explicit(_) => {
                Err(Error::Precondition("this command needs a single operator, not a member list".into()))
            }
        }
    }
}

/// Parses an operator file: one operator (its iterates), or a `[[members]]` list.
pub fn parse_operator(text: &str) -> Result<OperatorConfig> {
    let f: OperatorFile = load(text)?;
    let domain: IndexDomain = f.index_domain.into();
    if !f.members.is_empty() {
        if f.preset.is_some() {
            return Err(Error::Schema("give either preset or members".into()));
        }
        let members = f.members.iter().map(|m| m.build(domain)).collect::<Result<Vec<_>>>()?;
        return Ok(OperatorConfig { sequence: OperatorSequence::Explicit(members), weights: None });
    }
    Ok(OperatorConfig { sequence: OperatorSequence::Iterates(f.build(domain)?), weights: f.weights_for_space()? })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TargetsFile {
    dim: usize,
    #[serde(default)]
    explicit: Vec<Vec<String>>,
    pattern: Option<Vec<Vec<String>>>,
    kernel_weights: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetsConfig {
    pub family: TargetFamily,
    pub kernel_weights: Option<Vec<Scalar>>,
}

/// Parses a target-family file for the universal-span criterion.
pub fn parse_targets(text: &str) -> Result<TargetsConfig> {
    let f: TargetsFile = load(text)?;
    let vectors = |v: &[Vec<String>]| v.iter().map(|x| scalars(x)).collect::<Result<Vec<_>>>();
    let tail = match &f.pattern {
        Some(p) => Some(TargetTail::Periodic(vectors(p)?)),
        None => None,
    };
    let family = TargetFamily { dim: f.dim, explicit: vectors(&f.explicit)?, tail };
    let kernel_weights = f.kernel_weights.as_deref().map(scalars).transpose()?;
    Ok(TargetsConfig { family, kernel_weights })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessEntry {
    n: i64,
    #[serde(default)]
    annihilated: Vec<i64>,
    annihilated_range: Option<[i64; 2]>,
    constant: String,
    iterate: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessFile {
    #[serde(default)]
    q_row: i64,
    witness: Vec<WitnessEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessConfig {
    pub q_row: i64,
    pub witnesses: Vec<NoSubspaceWitness>,
}

/// Parses a no-subspace witness file. `annihilated_range = [lo, hi]` adds `lo..hi`.
pub fn parse_witnesses(text: &str) -> Result<WitnessConfig> {
    let f: WitnessFile = load(text)?;
    let mut witnesses = Vec::with_capacity(f.witness.len());
    for w in &f.witness {
        let mut annihilated: BTreeSet<i64> = w.annihilated.iter().copied().collect();
        if let Some([lo, hi]) = w.annihilated_range {
            annihilated.extend(lo..hi);
        }
        witnesses.push(NoSubspaceWitness { n: w.n, annihilated, constant: parse_scalar(&w.constant)?, iterate: w.iterate });
    }
    Ok(WitnessConfig { q_row: f.q_row, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::backward_shift;

    #[test]
    fn zero_denominator_is_a_parse_error() {
        let text = "kind = \"weighted-sup\"\n[[rows]]\ntail = { kind = \"constant\", value = \"3/0\" }\n";
        assert!(matches!(parse_space(text), Err(Error::Parse(_))));
    }

    #[test]
    fn syntax_and_schema_errors_differ() {
        assert!(matches!(parse_space("kind = "), Err(Error::Parse(_))));
        assert!(matches!(parse_space("kind = \"weighted-sup\"\ncolour = 1\n"), Err(Error::Schema(_))));
        assert!(matches!(parse_space("first_row = 0\n"), Err(Error::Schema(_))));
    }

    #[test]
    fn omega_space() {
        let s = parse_space("kind = \"weighted-sup\"\ngenerator = \"omega\"\n").unwrap();
        assert_eq!(s.family, GradedSeminormFamily::omega());
        assert!(s.finite_dense);
    }

    #[test]
    fn koethe_rows_from_pairs() {
        let text = r#"
kind = "weighted-l1"
first_row = 1
generator = "repeat-last"
[[rows]]
explicit = ["0:1", "1:1/2"]
tail = { kind = "constant", value = "1" }
"#;
        let s = parse_space(text).unwrap();
        let row = s.family.row(3).unwrap();
        assert_eq!(row.tail_start, 2);
        assert_eq!(row.weight(1), Some(Scalar::new(1.into(), 2.into())));
    }

    #[test]
    fn shift_preset_and_members() {
        let op = parse_operator("preset = \"backward-shift\"\n").unwrap();
        assert_eq!(*op.single().unwrap(), backward_shift());
        let text = "[[members]]\npreset = \"backward-shift\"\n[[members]]\npreset = \"backward-shift\"\npower = 3\n";
        let op = parse_operator(text).unwrap();
        match op.sequence {
            OperatorSequence::Explicit(v) => assert_eq!(v[1], backward_shift().iterate(3).unwrap()),
            _ => panic!("expected a member list"),
        }
    }

    #[test]
    fn band_with_quasi_polynomial_diagonal() {
        let text = "preset = \"band\"\nrows = [[\"1:1\"]]\n[[diagonals]]\noffset = 2\nresidues = [[\"1\"], [\"0\", \"1\"]]\n";
        let t = parse_operator(text).unwrap().sequence;
        let OperatorSequence::Iterates(t) = t else { panic!() };
        assert_eq!(t.entry(0, 1).unwrap(), int(1));
        assert_eq!(t.entry(3, 5).unwrap(), int(3));
        assert_eq!(t.entry(2, 4).unwrap(), int(1));
    }

    #[test]
    fn targets_and_witnesses() {
        let t = parse_targets("dim = 2\npattern = [[\"1\", \"0\"], [\"0\", \"1\"]]\n").unwrap();
        assert!(t.family.validate().is_ok());
        let w = parse_witnesses("[[witness]]\nn = 2\nannihilated_range = [-2, 1]\nconstant = \"2\"\niterate = 1\n").unwrap();
        assert_eq!(w.witnesses[0].annihilated, BTreeSet::from([-2, -1, 0]));
    }
}
