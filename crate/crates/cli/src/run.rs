use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use linedyn::config::{self, OperatorConfig, SpaceConfig};
use linedyn::constructor::{
    basic_seq_build, basic_seq_verify, combination_check, fhc_prefix_certificate, hc_prefix_certificate,
    subspace_prefix_certificates, Certificate, Targets,
};
use linedyn::criteria::{
    cor_bes, cor_c, frequent_schedule_criterion, no_subspace_witness_verify, rank_criterion, universal_span_criterion,
    ws_gap_criterion, RankParams, WsGapParams,
};
use linedyn::operator::OperatorSequence;
use linedyn::report::{self, CertificateDoc, CombinationSpec};
use linedyn::scalar::parse_scalar;
use linedyn::seminorm::{Generator, SeminormKind};
use linedyn::seq::IndexDomain;
use linedyn::trace::{orbit_trace, trace_csv};
use linedyn::{Error, FiniteSeq, Result, Verdict};
use serde_json::{json, Value};

use crate::{Command, Construction, Criterion, Opts, Validate};

type Echo = BTreeMap<String, String>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn need<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a PathBuf> {
    p.as_ref().ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required")))
}

/// Loads an input file and records its text in the echo.
fn input<T>(echo: &mut Echo, key: &str, path: &Path, parse: fn(&str) -> Result<T>) -> Result<T> {
    let text = read(path)?;
    let v = parse(&text)?;
    echo.insert(key.into(), text);
    Ok(v)
}

fn space(echo: &mut Echo, o: &Opts) -> Result<SpaceConfig> {
    input(echo, "space_file", need(&o.space, "space")?, config::parse_space)
}

fn operator(echo: &mut Echo, o: &Opts) -> Result<OperatorConfig> {
    input(echo, "operator_file", need(&o.op, "op")?, config::parse_operator)
}

fn horizon(echo: &mut Echo, o: &Opts, default: u64) -> Result<u64> {
    let h = o.horizon.unwrap_or(default);
    if h < 1 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    echo.insert("horizon".into(), h.to_string());
    Ok(h)
}

fn param<T: ToString + Copy>(echo: &mut Echo, key: &str, v: Option<T>, default: T) -> T {
    let v = v.unwrap_or(default);
    echo.insert(key.into(), v.to_string());
    v
}

/// Sample count and seed; the seed is mandatory once anything is sampled.
fn sampling(echo: &mut Echo, o: &Opts, default: usize) -> Result<(usize, u64)> {
    let samples = param(echo, "samples", o.samples, default);
    if samples == 0 {
        return Ok((0, 0));
    }
    let seed = o.seed.ok_or_else(|| Error::InvalidArgument("--seed is required when sampling".into()))?;
    echo.insert("seed".into(), seed.to_string());
    echo.insert("rng".into(), "ChaCha8".into());
    Ok((samples, seed))
}

fn verdict_out(command: &str, echo: &Echo, v: &Verdict, out: Option<&PathBuf>) -> Result<i32> {
    emit(out, &report::envelope(command, echo, report::verdict_value(v)))?;
    Ok(v.status.exit_code())
}

pub fn run(cmd: &Command) -> Result<i32> {
    match cmd {
        Command::Space { action: Validate::Validate { file, out } } => {
            let mut echo = Echo::new();
            let s = input(&mut echo, "space_file", file, config::parse_space)?;
            let f = &s.family;
            let result = json!({
                "valid": true,
                "kind": match f.kind { SeminormKind::WeightedSup => "weighted-sup", SeminormKind::WeightedL1 => "weighted-l1" },
                "index_domain": domain_name(f.domain),
                "first_row": f.first_row,
                "explicit_rows": f.rows.len(),
                "generator": f.generator.as_ref().map(generator_name),
                "finite_dense": s.finite_dense,
            });
            emit(out.as_ref(), &report::envelope("space validate", &echo, result))?;
            Ok(0)
        }
        Command::Op { action: Validate::Validate { file, out } } => {
            let mut echo = Echo::new();
            let op = input(&mut echo, "operator_file", file, config::parse_operator)?;
            let describe = |t: &linedyn::ColumnFiniteOperator| {
                json!({
                    "explicit_rows": t.explicit_rows().len(),
                    "rule": t.rule().map(|r| json!({
                        "stride": r.stride,
                        "offsets": r.diagonals.keys().collect::<Vec<_>>(),
                        "period": r.period(),
                    })),
                })
            };
            let result = match &op.sequence {
                OperatorSequence::Iterates(t) => json!({
                    "valid": true,
                    "index_domain": domain_name(t.domain()),
                    "sequence": "iterates",
                    "operator": describe(t),
                }),
                OperatorSequence::Explicit(v) => json!({
                    "valid": true,
                    "index_domain": domain_name(op.sequence.domain()),
                    "sequence": "explicit",
                    "members": v.iter().map(describe).collect::<Vec<_>>(),
                }),
            };
            emit(out.as_ref(), &report::envelope("op validate", &echo, result))?;
            Ok(0)
        }
        Command::Check { criterion, opts } => check(*criterion, opts),
        Command::Construct { kind, opts } => construct(*kind, opts),
        Command::Verify { certificate, out } => verify(certificate, out.as_ref()),
        Command::Trace { op, x, steps, from, window, csv, out } => {
            let mut echo = Echo::new();
            let ops = input(&mut echo, "operator_file", op, config::parse_operator)?;
            let t = ops.single()?;
            let x = FiniteSeq::from_pairs(t.domain(), x)?;
            echo.insert("x".into(), x.to_pairs().join(","));
            echo.insert("steps".into(), steps.to_string());
            echo.insert("from".into(), from.to_string());
            echo.insert("window".into(), window.to_string());
            let rows = orbit_trace(t, &x, *steps, *from, *window)?;
            let text = if *csv {
                trace_csv(&rows, *from)
            } else {
                report::envelope("trace", &echo, report::trace_value(&rows, *from))
            };
            emit(out.as_ref(), &text)?;
            Ok(0)
        }
    }
}

fn domain_name(d: IndexDomain) -> &'static str {
    match d {
        IndexDomain::Unilateral => "unilateral",
        IndexDomain::Bilateral => "bilateral",
    }
}

fn generator_name(g: &Generator) -> String {
    match g {
        Generator::Omega => "omega".into(),
        Generator::RepeatLast => "repeat-last".into(),
        Generator::FactorialGaps { known_len } => format!("factorial-gaps(known_len = {known_len})"),
        Generator::BilateralTail => "bilateral-tail".into(),
    }
}

fn check(criterion: Criterion, o: &Opts) -> Result<i32> {
    let mut echo = Echo::new();
    let out = o.out.as_ref();
    let (name, verdict) = match criterion {
        Criterion::Rank => {
            let ops = operator(&mut echo, o)?;
            let p = RankParams {
                n: param(&mut echo, "N", o.n, 1),
                l: param(&mut echo, "L", o.l, 1),
                k: param(&mut echo, "K", o.k, 1),
                horizon: horizon(&mut echo, o, 100)?,
            };
            ("check rank", rank_criterion(&ops.sequence, &p)?)
        }
        Criterion::CorC => {
            let ops = operator(&mut echo, o)?;
            let h = horizon(&mut echo, o, 100)?;
            ("check cor-c", cor_c(&ops.sequence, h)?)
        }
        Criterion::CorBes => {
            let ops = operator(&mut echo, o)?;
            let h = horizon(&mut echo, o, 100)?;
            ("check cor-bes", cor_bes(ops.single()?, h)?)
        }
        Criterion::FhcSchedule => {
            let ops = operator(&mut echo, o)?;
            let l = param(&mut echo, "L", o.l, 3);
            let h = horizon(&mut echo, o, 100)?;
            ("check fhc-schedule", frequent_schedule_criterion(&ops.sequence, l, h)?)
        }
        Criterion::WsGap => {
            let s = space(&mut echo, o)?;
            let weights = match &o.op {
                Some(_) => operator(&mut echo, o)?.weights,
                None => None,
            };
            let defaults = WsGapParams::default();
            let p = WsGapParams {
                min_len: param(&mut echo, "min_len", o.min_len, defaults.min_len),
                sample_rows: param(&mut echo, "rows", o.rows, defaults.sample_rows),
                horizon: horizon(&mut echo, o, defaults.horizon)?,
                finite_dense: s.finite_dense,
            };
            ("check ws-gap", ws_gap_criterion(&s.family, weights.as_ref(), &p)?)
        }
        Criterion::NoSubspace => {
            let ops = operator(&mut echo, o)?;
            let s = space(&mut echo, o)?;
            let target = match &o.target {
                Some(p) => input(&mut echo, "target_file", p, config::parse_space)?,
                None => s.clone(),
            };
            let w = input(&mut echo, "witness_file", need(&o.witness, "witness")?, config::parse_witnesses)?;
            let (samples, seed) = sampling(&mut echo, o, 100)?;
            let v = no_subspace_witness_verify(ops.single()?, &s.family, &target.family, w.q_row, &w.witnesses, samples, seed)?;
            ("check no-subspace", v)
        }
        Criterion::UniversalSpan => {
            let t = input(&mut echo, "targets_file", need(&o.targets, "targets")?, config::parse_targets)?;
            ("check universal-span", universal_span_criterion(&t.family, t.kernel_weights.as_deref())?)
        }
    };
    verdict_out(name, &echo, &verdict, out)
}

fn certificate_summary(c: &Certificate) -> Value {
    json!({
        "kind": c.kind.name(),
        "vectors": c.vectors.len(),
        "hits": c.hits.iter().map(|h| json!({"vector": h.vector, "l": h.l, "time": h.time})).collect::<Vec<_>>(),
        "checks": c.checks.len(),
        "warnings": c.warnings,
    })
}

fn construct(kind: Construction, o: &Opts) -> Result<i32> {
    let mut echo = Echo::new();
    if let Construction::BasicSeq = kind {
        let s = space(&mut echo, o)?;
        let n = param(&mut echo, "J", o.j, 5);
        let eps = o.eps.iter().map(|e| parse_scalar(e)).collect::<Result<Vec<_>>>()?;
        echo.insert("eps".into(), o.eps.join(","));
        echo.insert("perturb".into(), o.perturb.to_string());
        let (samples, seed) = sampling(&mut echo, o, 100)?;
        let mut bundle = basic_seq_build(&s.family, n, &eps)?;
        if o.perturb {
            bundle = bundle.with_perturbation(&s.family)?;
        }
        let r = basic_seq_verify(&bundle, &s.family, samples, seed)?;
        let result = json!({ "bundle": report::bundle_value(&bundle), "checks": report::basic_report_value(&r) });
        emit(o.out.as_ref(), &report::envelope("construct basic-seq", &echo, result))?;
        return Ok(if r.passed() { 0 } else { 2 });
    }

    let path = need(&o.op, "op")?;
    let op_text = read(path)?;
    let ops = config::parse_operator(&op_text)?;
    let mut combination = None;
    let (name, cert) = match kind {
        Construction::HcPrefix => {
            let l = param(&mut echo, "L", o.l, 3);
            let k = param(&mut echo, "K", o.k, 1);
            let h = horizon(&mut echo, o, 1000)?;
            ("construct hc-prefix", hc_prefix_certificate(&ops.sequence, l, k, h, &Targets::Enumerated)?)
        }
        Construction::Subspace => {
            let l = param(&mut echo, "L", o.l, 2);
            let j = param(&mut echo, "J", o.j, 2);
            let h = horizon(&mut echo, o, 1000)?;
            let (samples, seed) = sampling(&mut echo, o, 200)?;
            let cert = subspace_prefix_certificates(&ops.sequence, l, j, h)?;
            if samples > 0 {
                combination = Some(CombinationSpec { samples, seed });
            }
            ("construct subspace", cert)
        }
        Construction::Fhc => {
            let l = param(&mut echo, "L", o.l, 2);
            let j = param(&mut echo, "J", o.j, 2);
            let h = horizon(&mut echo, o, 500)?;
            ("construct fhc", fhc_prefix_certificate(ops.single()?, l, j, h)?)
        }
        Construction::BasicSeq => unreachable!(),
    };
    let mut code = 0;
    let mut summary = certificate_summary(&cert);
    if let Some(spec) = combination {
        let r = combination_check(&cert, &ops.sequence, spec.samples, spec.seed)?;
        if !r.passed() {
            code = 2;
        }
        summary["combination"] = report::combination_value(&r);
    }
    let doc = CertificateDoc { certificate: cert, operator: op_text.clone(), parameters: echo.clone(), combination };
    match &o.out {
        Some(p) => {
            emit(Some(p), &doc.to_text())?;
            echo.insert("operator_file".into(), op_text);
            emit(None, &report::envelope(name, &echo, summary))?;
        }
        None => emit(None, &doc.to_text())?,
    }
    Ok(code)
}

fn verify(path: &Path, out: Option<&PathBuf>) -> Result<i32> {
    let text = read(path)?;
    let doc = CertificateDoc::from_text(&text)?;
    let ops = config::parse_operator(&doc.operator)?;
    let r = doc.certificate.verify(&ops.sequence)?;
    let mut passed = r.passed();
    let mut result = json!({ "kind": doc.certificate.kind.name(), "windows": report::verify_value(&r) });
    if let Some(spec) = doc.combination {
        let c = combination_check(&doc.certificate, &ops.sequence, spec.samples, spec.seed)?;
        passed &= c.passed();
        result["combination"] = report::combination_value(&c);
    }
    result["passed"] = Value::Bool(passed);
    let mut echo = doc.parameters.clone();
    echo.insert("certificate_file".into(), text);
    emit(out, &report::envelope("verify", &echo, result))?;
    Ok(if passed { 0 } else { 2 })
}
